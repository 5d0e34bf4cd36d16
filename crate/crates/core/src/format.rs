//! CFLD1 binary field files.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! "CFLD1"                     5 bytes
//! n                           u8, 1..=8
//! dims[n]                     u64 each, even and >= 2
//! extent[n]                   f64 each, finite and > 0
//! tag length, tag             u8, then that many bytes ("bitmask-v1")
//! payload                     row-major points (last axis fastest); per point
//!                             2^n coefficients in bitmask blade order, each
//!                             as (re: f64, im: f64)
//! ```
//!
//! The payload must fill the rest of the input exactly.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{BladeOrder, FieldHeader, GridField};

pub const MAGIC: &[u8; 5] = b"CFLD1";
const COEFF_BYTES: usize = 16;

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::InvalidHeader(format!("truncated {what}")))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().expect("8 bytes")))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().expect("8 bytes")))
    }
}

/// Parses the header, returning it with the payload offset.
pub fn decode_header(bytes: &[u8]) -> Result<(FieldHeader, usize)> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(MAGIC.len(), "magic")? != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let n = r.u8("dimension")? as usize;
    if !(1..=crate::clifford::MAX_DIM).contains(&n) {
        return Err(Error::InvalidDimension(n));
    }
    let dims = (0..n)
        .map(|_| {
            let d = r.u64("dims")?;
            usize::try_from(d).map_err(|_| Error::InvalidHeader(format!("dimension {d} too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    let extent = (0..n).map(|_| r.f64("extents")).collect::<Result<Vec<_>>>()?;
    let tag_len = r.u8("blade order tag")? as usize;
    let tag = r.take(tag_len, "blade order tag")?;
    let tag = std::str::from_utf8(tag).map_err(|_| Error::InvalidHeader("blade order tag is not UTF-8".into()))?;
    let order = BladeOrder::from_tag(tag).ok_or_else(|| Error::InvalidHeader(format!("unknown blade order {tag:?}")))?;
    let header = FieldHeader::new(dims, extent)?;
    if header.blade_order() != order {
        return Err(Error::HeaderMismatch);
    }
    Ok((header, r.pos))
}

pub fn encode_header(header: &FieldHeader) -> Vec<u8> {
    let tag = header.blade_order().tag();
    let mut out = Vec::with_capacity(MAGIC.len() + 2 + 16 * header.n() + tag.len());
    out.extend_from_slice(MAGIC);
    out.push(header.n() as u8);
    for &d in header.dims() {
        out.extend_from_slice(&(d as u64).to_le_bytes());
    }
    for &l in header.extent() {
        out.extend_from_slice(&l.to_le_bytes());
    }
    out.push(tag.len() as u8);
    out.extend_from_slice(tag.as_bytes());
    out
}

pub fn decode(bytes: &[u8]) -> Result<GridField> {
    let (header, offset) = decode_header(bytes)?;
    let coeffs = header.points().checked_mul(header.blades());
    let expected = coeffs.and_then(|c| c.checked_mul(COEFF_BYTES));
    let payload = &bytes[offset..];
    match expected {
        Some(len) if len == payload.len() => {}
        Some(len) => {
            return Err(Error::Format(format!(
                "payload has {} bytes, header requires {len}",
                payload.len()
            )))
        }
        None => return Err(Error::Format("payload size overflows".into())),
    }
    let data = payload
        .chunks_exact(COEFF_BYTES)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    GridField::from_data(header, data)
}

pub fn encode(field: &GridField) -> Vec<u8> {
    let mut out = encode_header(field.header());
    out.reserve(field.data().len() * COEFF_BYTES);
    for c in field.data() {
        out.extend_from_slice(&c.re.to_le_bytes());
        out.extend_from_slice(&c.im.to_le_bytes());
    }
    out
}

pub fn read_field(path: impl AsRef<Path>) -> Result<GridField> {
    decode(&fs::read(path)?)
}

pub fn write_field(path: impl AsRef<Path>, field: &GridField) -> Result<()> {
    fs::write(path, encode(field))?;
    Ok(())
}

/// Writes one row per point and blade: coordinates, blade label, real and
/// imaginary part. Values carry 12 significant digits, so the export does not
/// round-trip.
pub fn write_csv(mut out: impl std::io::Write, field: &GridField) -> Result<()> {
    let h = field.header();
    let coords: Vec<String> = (1..=h.n()).map(|k| format!("x{k}")).collect();
    writeln!(out, "{},blade,re,im", coords.join(","))?;
    for p in 0..field.len() {
        let pos = h.position(p);
        let pos: Vec<String> = pos.iter().map(|v| format!("{v:.12e}")).collect();
        let pos = pos.join(",");
        for (t, c) in field.at(p).iter().enumerate() {
            let blade = crate::clifford::BladeIndex::new(t as u32, h.n())?;
            writeln!(out, "{pos},{blade},{:.11e},{:.11e}", c.re, c.im)?;
        }
    }
    Ok(())
}

pub fn write_csv_file(path: impl AsRef<Path>, field: &GridField) -> Result<()> {
    let mut file = std::io::BufWriter::new(fs::File::create(path)?);
    write_csv(&mut file, field)?;
    file.flush()?;
    Ok(())
}
