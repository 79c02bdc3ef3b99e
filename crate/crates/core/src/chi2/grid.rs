//! Sampled vector fields on uniform Cartesian grids.
//!
//! Cells are stored row-major with z fastest: `index = (ix·ny + iy)·nz + iz`.
//! Each value is the complex field vector at the cell center.

use std::io::{BufRead, Read, Write};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

pub type FieldVector = [Complex64; 3];

const NORM_TOL: f64 = 1e-12;
const BINARY_MAGIC: &[u8; 4] = b"FGRD";
const BINARY_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    origin: [f64; 3],
    spacing: [f64; 3],
    dims: [usize; 3],
    values: Vec<FieldVector>,
}

pub fn vector_norm(v: &FieldVector) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

impl FieldGrid {
    /// Wraps already-normalized values; the largest vector norm must be 1.
    pub fn from_values(
        origin: [f64; 3],
        spacing: [f64; 3],
        dims: [usize; 3],
        values: Vec<FieldVector>,
    ) -> Result<Self> {
        check_geometry(&spacing, &dims)?;
        if values.len() != dims.iter().product::<usize>() {
            return domain(format!(
                "expected {} cells for dims {:?}, got {}",
                dims.iter().product::<usize>(),
                dims,
                values.len()
            ));
        }
        let grid = Self {
            origin,
            spacing,
            dims,
            values,
        };
        let peak = grid.peak_norm();
        if (peak - 1.0).abs() > NORM_TOL {
            return domain(format!("field is not normalized to unit peak (max |E| = {peak})"));
        }
        Ok(grid)
    }

    /// Scales arbitrary values so the peak vector norm is 1.
    pub fn normalized(
        origin: [f64; 3],
        spacing: [f64; 3],
        dims: [usize; 3],
        mut values: Vec<FieldVector>,
    ) -> Result<Self> {
        let peak = values.iter().map(vector_norm).fold(0.0, f64::max);
        if !(peak > 0.0 && peak.is_finite()) {
            return domain("field vanishes everywhere or is not finite");
        }
        for v in values.iter_mut() {
            for c in v.iter_mut() {
                *c /= peak;
            }
        }
        Self::from_values(origin, spacing, dims, values)
    }

    /// Samples `field` at every cell center, then normalizes to unit peak.
    pub fn sample<F>(origin: [f64; 3], spacing: [f64; 3], dims: [usize; 3], field: F) -> Result<Self>
    where
        F: Fn([f64; 3]) -> FieldVector,
    {
        check_geometry(&spacing, &dims)?;
        let mut values = Vec::with_capacity(dims.iter().product());
        for ix in 0..dims[0] {
            for iy in 0..dims[1] {
                for iz in 0..dims[2] {
                    values.push(field(center(&origin, &spacing, [ix, iy, iz])));
                }
            }
        }
        Self::normalized(origin, spacing, dims, values)
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn values(&self) -> &[FieldVector] {
        &self.values
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_center(&self, index: [usize; 3]) -> [f64; 3] {
        center(&self.origin, &self.spacing, index)
    }

    pub fn peak_norm(&self) -> f64 {
        self.values.iter().map(vector_norm).fold(0.0, f64::max)
    }

    /// True when both grids sample the same cells.
    pub fn same_geometry(&self, other: &FieldGrid) -> bool {
        self.dims == other.dims
            && close3(&self.origin, &other.origin, &self.spacing)
            && close3(&self.spacing, &other.spacing, &self.spacing)
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "# fieldgrid v1: origin, spacing (m), dims; then Re/Im of Ex Ey Ez per cell, z fastest"
        )?;
        writeln!(
            w,
            "origin {:e} {:e} {:e}",
            self.origin[0], self.origin[1], self.origin[2]
        )?;
        writeln!(
            w,
            "spacing {:e} {:e} {:e}",
            self.spacing[0], self.spacing[1], self.spacing[2]
        )?;
        writeln!(w, "dims {} {} {}", self.dims[0], self.dims[1], self.dims[2])?;
        for v in &self.values {
            writeln!(
                w,
                "{:e} {:e} {:e} {:e} {:e} {:e}",
                v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im
            )?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut origin = None;
        let mut spacing = None;
        let mut dims = None;
        let mut values = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap_or_default();
            let bad = |what: &str| Error::Format(format!("line {}: {what}", lineno + 1));
            match head {
                "origin" => origin = Some(parse3::<f64>(parts).map_err(|_| bad("bad origin"))?),
                "spacing" => spacing = Some(parse3::<f64>(parts).map_err(|_| bad("bad spacing"))?),
                "dims" => dims = Some(parse3::<usize>(parts).map_err(|_| bad("bad dims"))?),
                _ => {
                    let nums = line
                        .split_whitespace()
                        .map(str::parse::<f64>)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("unparsable cell row"))?;
                    if nums.len() != 6 {
                        return Err(bad("cell rows need 6 columns"));
                    }
                    values.push([
                        Complex64::new(nums[0], nums[1]),
                        Complex64::new(nums[2], nums[3]),
                        Complex64::new(nums[4], nums[5]),
                    ]);
                }
            }
        }
        let missing = |k: &str| Error::Format(format!("missing '{k}' header"));
        Self::from_values(
            origin.ok_or_else(|| missing("origin"))?,
            spacing.ok_or_else(|| missing("spacing"))?,
            dims.ok_or_else(|| missing("dims"))?,
            values,
        )
    }

    /// Little-endian binary layout: magic `FGRD`, u32 version, 3×f64 origin,
    /// 3×f64 spacing, 3×u64 dims, then six f64 per cell.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(BINARY_MAGIC)?;
        w.write_all(&BINARY_VERSION.to_le_bytes())?;
        for x in self.origin.iter().chain(self.spacing.iter()) {
            w.write_all(&x.to_le_bytes())?;
        }
        for d in self.dims {
            w.write_all(&(d as u64).to_le_bytes())?;
        }
        for v in &self.values {
            for c in v {
                w.write_all(&c.re.to_le_bytes())?;
                w.write_all(&c.im.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != BINARY_MAGIC {
            return Err(Error::Format("not a binary field grid".into()));
        }
        let mut word = [0u8; 4];
        r.read_exact(&mut word)?;
        let version = u32::from_le_bytes(word);
        if version != BINARY_VERSION {
            return Err(Error::Format(format!("unsupported grid version {version}")));
        }
        let read_f64 = |r: &mut R| -> Result<f64> {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            Ok(f64::from_le_bytes(b))
        };
        let origin = [read_f64(&mut r)?, read_f64(&mut r)?, read_f64(&mut r)?];
        let spacing = [read_f64(&mut r)?, read_f64(&mut r)?, read_f64(&mut r)?];
        let mut dims = [0usize; 3];
        for d in dims.iter_mut() {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            *d = usize::try_from(u64::from_le_bytes(b))
                .map_err(|_| Error::Format("grid dimension overflows usize".into()))?;
        }
        check_geometry(&spacing, &dims)?;
        let n = dims.iter().product::<usize>();
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            let mut v = [Complex64::new(0.0, 0.0); 3];
            for c in v.iter_mut() {
                *c = Complex64::new(read_f64(&mut r)?, read_f64(&mut r)?);
            }
            values.push(v);
        }
        Self::from_values(origin, spacing, dims, values)
    }
}

fn center(origin: &[f64; 3], spacing: &[f64; 3], index: [usize; 3]) -> [f64; 3] {
    [
        origin[0] + (index[0] as f64 + 0.5) * spacing[0],
        origin[1] + (index[1] as f64 + 0.5) * spacing[1],
        origin[2] + (index[2] as f64 + 0.5) * spacing[2],
    ]
}

fn check_geometry(spacing: &[f64; 3], dims: &[usize; 3]) -> Result<()> {
    if spacing.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return domain(format!("grid spacing must be positive, got {spacing:?}"));
    }
    if dims.contains(&0) {
        return domain(format!("grid dimensions must be positive, got {dims:?}"));
    }
    Ok(())
}

fn close3(a: &[f64; 3], b: &[f64; 3], scale: &[f64; 3]) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() <= 1e-9 * scale[i])
}

fn parse3<'a, T: std::str::FromStr>(mut parts: impl Iterator<Item = &'a str>) -> std::result::Result<[T; 3], ()> {
    let mut next = || parts.next().ok_or(())?.parse::<T>().map_err(|_| ());
    Ok([next()?, next()?, next()?])
}
