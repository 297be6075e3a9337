//! Binary snapshot container.
//!
//! Layout (little endian):
//!
//! ```text
//! magic      8 bytes  "NSMSNAP\0"
//! version    u8
//! n          u32
//! dealias    f64
//! time       f64
//! params     7 x f64  (beta, eta, gamma, s, K, R, delta)
//! hash       u8 length + ASCII bytes
//! count      u8
//! per field: u8 name length, name, u8 div_free flag,
//!            3 x n^3 x (re f64, im f64), component-major
//! ```

use std::io::{Read, Write};

use num_complex::Complex64;
use nsm_core::PhysParams;

use super::{FieldError, Grid, SpectralField};

pub const MAGIC: &[u8; 8] = b"NSMSNAP\0";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub time: f64,
    pub params: PhysParams,
    pub config_hash: String,
    pub fields: Vec<(String, SpectralField)>,
}

impl Snapshot {
    pub fn field(&self, name: &str) -> Option<&SpectralField> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn grid(&self) -> Option<&Grid> {
        self.fields.first().map(|(_, f)| &f.grid)
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<(), FieldError> {
        let grid = self.grid().ok_or_else(|| FieldError::Format("snapshot has no fields".into()))?;
        if self.fields.len() > u8::MAX as usize {
            return Err(FieldError::Format("too many fields".into()));
        }
        w.write_all(MAGIC)?;
        w.write_all(&[VERSION])?;
        w.write_all(&(grid.n() as u32).to_le_bytes())?;
        w.write_all(&grid.dealias_fraction().to_le_bytes())?;
        w.write_all(&self.time.to_le_bytes())?;
        let p = &self.params;
        for v in [p.beta, p.eta, p.gamma, p.sobolev_s, p.band_k, p.band_r, p.band_delta] {
            w.write_all(&v.to_le_bytes())?;
        }
        write_str(&mut w, &self.config_hash)?;
        w.write_all(&[self.fields.len() as u8])?;
        for (name, f) in &self.fields {
            if f.grid != *grid {
                return Err(FieldError::GridMismatch(grid.n(), f.grid.n()));
            }
            write_str(&mut w, name)?;
            w.write_all(&[f.div_free as u8])?;
            let mut buf = Vec::with_capacity(16 * grid.len());
            for c in &f.comps {
                buf.clear();
                for v in c {
                    buf.extend_from_slice(&v.re.to_le_bytes());
                    buf.extend_from_slice(&v.im.to_le_bytes());
                }
                w.write_all(&buf)?;
            }
        }
        Ok(())
    }

    pub fn read<R: Read>(mut r: R) -> Result<Snapshot, FieldError> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(FieldError::Format("bad magic".into()));
        }
        let version = read_u8(&mut r)?;
        if version != VERSION {
            return Err(FieldError::Format(format!("unsupported version {version}")));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let n = u32::from_le_bytes(b4) as usize;
        if n > 1024 {
            return Err(FieldError::Format(format!("implausible grid size {n}")));
        }
        let dealias = read_f64(&mut r)?;
        let grid = Grid::new(n, dealias)?;
        let time = read_f64(&mut r)?;
        let mut pv = [0.0; 7];
        for v in pv.iter_mut() {
            *v = read_f64(&mut r)?;
        }
        let params = PhysParams {
            beta: pv[0],
            eta: pv[1],
            gamma: pv[2],
            sobolev_s: pv[3],
            band_k: pv[4],
            band_r: pv[5],
            band_delta: pv[6],
        };
        let config_hash = read_str(&mut r)?;
        let count = read_u8(&mut r)? as usize;
        let mut fields = Vec::with_capacity(count);
        let mut raw = vec![0u8; 16 * grid.len()];
        for _ in 0..count {
            let name = read_str(&mut r)?;
            let div_free = match read_u8(&mut r)? {
                0 => false,
                1 => true,
                other => return Err(FieldError::Format(format!("bad div_free flag {other}"))),
            };
            let mut f = SpectralField::zeros(&grid);
            f.div_free = div_free;
            for c in 0..3 {
                r.read_exact(&mut raw)?;
                for (i, chunk) in raw.chunks_exact(16).enumerate() {
                    let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
                    let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
                    f.comps[c][i] = Complex64::new(re, im);
                }
            }
            fields.push((name, f));
        }
        Ok(Snapshot { time, params, config_hash, fields })
    }
}

fn write_str<W: Write>(w: &mut W, s: &str) -> Result<(), FieldError> {
    if s.len() > u8::MAX as usize {
        return Err(FieldError::Format(format!("string too long: {s}")));
    }
    w.write_all(&[s.len() as u8])?;
    w.write_all(s.as_bytes())?;
    Ok(())
}

fn read_u8<R: Read>(r: &mut R) -> Result<u8, FieldError> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b)?;
    Ok(b[0])
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64, FieldError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

fn read_str<R: Read>(r: &mut R) -> Result<String, FieldError> {
    let len = read_u8(r)? as usize;
    let mut b = vec![0u8; len];
    r.read_exact(&mut b)?;
    String::from_utf8(b).map_err(|_| FieldError::Format("non-UTF-8 string".into()))
}
