//! Binary packet files (`.sxp`).
//!
//! Layout, little-endian:
//!
//! ```text
//! magic "SXP1" | version u8 = 1 | kind u8 | m u8 | g u32 | K u16 | N u16
//! | index u16 | x_len u16 | x_len * u16 | L u64 | payload_bits u64
//! | ceil(payload_bits / 8) payload bytes, LSB-first, coefficient 0 first
//! ```
//!
//! Pad bits in the last payload byte must be zero.

use std::io::{Read, Write};

use crate::codec::Packet;
use crate::codes::{CodeKind, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2poly::Poly2;

pub const MAGIC: &[u8; 4] = b"SXP1";
pub const VERSION: u8 = 1;

fn narrow<T: TryFrom<usize>>(v: usize, what: &str) -> Result<T> {
    T::try_from(v).map_err(|_| Error::Format(format!("{what}={v} does not fit the header field")))
}

impl Packet {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let s = &self.spec;
        if self.bits.bit_len() > self.payload_bits {
            return Err(Error::Format(format!(
                "packet {} holds {} bits but declares {}",
                self.index,
                self.bits.bit_len(),
                self.payload_bits
            )));
        }
        let g =
            s.g.to_mask()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| Error::Format("modulus does not fit in 32 bits".into()))?;
        let x = s.x.as_deref().unwrap_or(&[]);
        let mut out = Vec::with_capacity(36 + 2 * x.len() + self.payload_bits.div_ceil(8));
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(s.kind.tag());
        out.push(narrow::<u8>(s.m as usize, "m")?);
        out.extend_from_slice(&g.to_le_bytes());
        out.extend_from_slice(&narrow::<u16>(s.k, "K")?.to_le_bytes());
        out.extend_from_slice(&narrow::<u16>(s.n, "N")?.to_le_bytes());
        out.extend_from_slice(&narrow::<u16>(self.index, "index")?.to_le_bytes());
        out.extend_from_slice(&narrow::<u16>(x.len(), "x_len")?.to_le_bytes());
        for &v in x {
            out.extend_from_slice(&narrow::<u16>(v, "x")?.to_le_bytes());
        }
        out.extend_from_slice(&(self.source_len as u64).to_le_bytes());
        out.extend_from_slice(&(self.payload_bits as u64).to_le_bytes());
        out.extend_from_slice(&self.bits.to_bytes(self.payload_bits.div_ceil(8)));
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Packet> {
        let mut r = Cursor { buf: bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::Format("bad magic, expected SXP1".into()));
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let tag = r.u8()?;
        let kind = CodeKind::from_tag(tag)
            .ok_or_else(|| Error::Format(format!("unknown kind tag {tag}")))?;
        let m = u32::from(r.u8()?);
        let g = Poly2::from_mask(u64::from(r.u32()?));
        let k = usize::from(r.u16()?);
        let n = usize::from(r.u16()?);
        let index = usize::from(r.u16()?);
        let x_len = usize::from(r.u16()?);
        let x: Vec<usize> = (0..x_len)
            .map(|_| r.u16().map(usize::from))
            .collect::<Result<_>>()?;
        let source_len =
            usize::try_from(r.u64()?).map_err(|_| Error::Format("L too large".into()))?;
        let payload_bits = usize::try_from(r.u64()?)
            .map_err(|_| Error::Format("payload length too large".into()))?;
        let payload = r.take(payload_bits.div_ceil(8))?;
        if r.pos != bytes.len() {
            return Err(Error::Format(format!(
                "{} trailing bytes after payload",
                bytes.len() - r.pos
            )));
        }
        if payload_bits % 8 != 0 {
            let last = payload[payload.len() - 1];
            if last >> (payload_bits % 8) != 0 {
                return Err(Error::Format(
                    "nonzero pad bits in the last payload byte".into(),
                ));
            }
        }
        if kind != CodeKind::Systematic && !x.is_empty() {
            return Err(Error::Format(
                "x entries are only allowed for systematic codes".into(),
            ));
        }
        let spec = CodeSpec {
            kind,
            k,
            n,
            m,
            g,
            x: (kind == CodeKind::Systematic).then_some(x),
        };
        spec.validate().map_err(|e| Error::Format(e.to_string()))?;
        if index == 0 || index > n {
            return Err(Error::Format(format!(
                "packet index {index} outside 1..={n}"
            )));
        }
        Ok(Packet {
            index,
            bits: Poly2::from_bytes(payload),
            payload_bits,
            source_len,
            spec,
        })
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.to_bytes()?)?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Packet> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Packet::from_bytes(&buf)
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| {
                Error::Format(format!(
                    "truncated file: needed {n} bytes at offset {}",
                    self.pos
                ))
            })?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(
            self.take(2)?.try_into().expect("2 bytes"),
        ))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }
}
