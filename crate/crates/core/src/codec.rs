//! Bit-level encoding and the two decoders.
//!
//! Encoding is shift-then-XOR on packet buffers. The MAP decoder inverts the
//! chosen `K x K` submatrix as `adj / det`: it multiplies the received
//! packets by the adjugate, strips the `z^t` factor of the determinant and
//! then runs one exact low-order division by the remaining odd part. The
//! zigzag decoder repeatedly reads an exposed bit and cancels it everywhere.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use itertools::Itertools;

use crate::codes::{CodeSpec, GenMatrix};
use crate::error::{Error, Result};
use crate::gf2poly::Poly2;
use crate::polymat::PolyMatrix;

/// One encoded packet `c_i(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packet {
    /// 1-based encoded-packet index.
    pub index: usize,
    pub bits: Poly2,
    /// Declared payload length in bits, normally `L + l_i`.
    pub payload_bits: usize,
    /// Source packet length `L` in bits.
    pub source_len: usize,
    pub spec: CodeSpec,
}

/// Encodes `K` source packets of `source_len` bits into `N` packets.
pub fn encode(a: &GenMatrix, sources: &[Poly2], source_len: usize) -> Result<Vec<Packet>> {
    Ok(encode_counted(a, sources, source_len)?.0)
}

/// Like [`encode`], also returning the number of packet-level XOR
/// accumulations performed.
pub fn encode_counted(
    a: &GenMatrix,
    sources: &[Poly2],
    source_len: usize,
) -> Result<(Vec<Packet>, usize)> {
    if sources.len() != a.k() {
        return Err(Error::LengthMismatch(format!(
            "expected {} source packets, got {}",
            a.k(),
            sources.len()
        )));
    }
    if source_len == 0 {
        return Err(Error::LengthMismatch(
            "source packets must hold at least one bit".into(),
        ));
    }
    if let Some(j) = sources.iter().position(|s| s.bit_len() > source_len) {
        return Err(Error::LengthMismatch(format!(
            "source packet {} is longer than {source_len} bits",
            j + 1
        )));
    }
    let mut xors = 0;
    let mut packets = Vec::with_capacity(a.n());
    for col in 0..a.n() {
        let mut acc = Poly2::zero();
        let mut copies = 0usize;
        for (row, s) in sources.iter().enumerate() {
            for t in a.entry(row, col).terms() {
                acc.add_shifted(s, t);
                copies += 1;
            }
        }
        xors += copies.saturating_sub(1);
        packets.push(Packet {
            index: col + 1,
            bits: acc,
            payload_bits: source_len + a.overheads()[col],
            source_len,
            spec: a.spec().clone(),
        });
    }
    Ok((packets, xors))
}

fn check_packets(a: &GenMatrix, packets: &[Packet], source_len: usize) -> Result<Vec<usize>> {
    if packets.len() != a.k() {
        return Err(Error::InvalidPacket(format!(
            "decoding needs exactly K={} packets, got {}",
            a.k(),
            packets.len()
        )));
    }
    let mut seen = vec![false; a.n() + 1];
    let mut indices = Vec::with_capacity(packets.len());
    for p in packets {
        if p.index == 0 || p.index > a.n() {
            return Err(Error::InvalidPacket(format!(
                "packet index {} outside 1..={}",
                p.index,
                a.n()
            )));
        }
        if std::mem::replace(&mut seen[p.index], true) {
            return Err(Error::InvalidPacket(format!(
                "packet {} given twice",
                p.index
            )));
        }
        if p.source_len != source_len {
            return Err(Error::InvalidPacket(format!(
                "packet {} declares L={}, expected {source_len}",
                p.index, p.source_len
            )));
        }
        let max = source_len + a.overhead(p.index);
        if p.payload_bits > max || p.bits.bit_len() > max {
            return Err(Error::PayloadTooLong {
                index: p.index,
                bits: p.payload_bits.max(p.bits.bit_len()),
                max,
            });
        }
        indices.push(p.index);
    }
    Ok(indices)
}

/// Intermediate quantities of a MAP decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecodeInfo {
    pub indices: Vec<usize>,
    /// Denominator of the inverse submatrix in lowest terms.
    pub det: Poly2,
    /// Power of `z` split off the determinant.
    pub shift: usize,
    /// Odd part of the determinant, `h(0) = 1`.
    pub filter: Poly2,
}

/// MAP decoding from exactly `K` packets.
pub fn map_decode(a: &GenMatrix, packets: &[Packet], source_len: usize) -> Result<Vec<Poly2>> {
    Ok(map_decode_with_info(a, packets, source_len)?.0)
}

pub fn map_decode_with_info(
    a: &GenMatrix,
    packets: &[Packet],
    source_len: usize,
) -> Result<(Vec<Poly2>, MapDecodeInfo)> {
    let indices = check_packets(a, packets, source_len)?;
    let dec = MapDecoder::new(a, &indices)?;
    let sources = dec.decode(packets, source_len)?;
    Ok((sources, dec.info))
}

/// MAP decoder prepared for one set of surviving packets.
///
/// The inverse submatrix is computed once, so stripes that lost the same
/// packets decode without repeating the adjugate.
#[derive(Clone, Debug)]
pub struct MapDecoder {
    code: GenMatrix,
    adj: PolyMatrix,
    info: MapDecodeInfo,
}

impl MapDecoder {
    /// `indices` are the 1-based packets that will be supplied, in order.
    pub fn new(a: &GenMatrix, indices: &[usize]) -> Result<Self> {
        if indices.len() != a.k() {
            return Err(Error::InvalidPacket(format!(
                "decoding needs exactly K={} packets, got {}",
                a.k(),
                indices.len()
            )));
        }
        if !indices.iter().all_unique() {
            return Err(Error::InvalidPacket(format!(
                "repeated packet index in {indices:?}"
            )));
        }
        let sub = a.submatrix(indices)?;
        let (det, adj) = match sub.inverse_fraction() {
            Ok(f) => f,
            Err(Error::Singular) => {
                return Err(Error::SingularSubmatrix {
                    indices: indices.to_vec(),
                })
            }
            Err(e) => return Err(e),
        };
        let (shift, filter) = det.split_zt()?;
        let info = MapDecodeInfo {
            indices: indices.to_vec(),
            det,
            shift,
            filter,
        };
        Ok(Self {
            code: a.clone(),
            adj,
            info,
        })
    }

    pub fn info(&self) -> &MapDecodeInfo {
        &self.info
    }

    /// Decodes packets given in the order of the indices passed to [`MapDecoder::new`].
    pub fn decode(&self, packets: &[Packet], source_len: usize) -> Result<Vec<Poly2>> {
        let indices = check_packets(&self.code, packets, source_len)?;
        if indices != self.info.indices {
            return Err(Error::InvalidPacket(format!(
                "decoder prepared for packets {:?}, got {indices:?}",
                self.info.indices
            )));
        }
        let MapDecodeInfo { shift, filter, .. } = &self.info;
        let k = self.code.k();
        let mut sources = Vec::with_capacity(k);
        for i in 0..k {
            // b_i = sum_j c_{i_j} * adj[j][i]
            let mut b = Poly2::zero();
            for (j, p) in packets.iter().enumerate() {
                b += &(&p.bits * self.adj.get(j, i));
            }
            if b.lowest_term().is_some_and(|low| low < *shift) {
                return Err(Error::NonzeroPrefix {
                    stream: i + 1,
                    t: *shift,
                });
            }
            sources.push(b.shr(*shift).exact_div_low(filter, source_len)?);
        }
        Ok(sources)
    }
}

/// One resolved bit of a zigzag decode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZigzagStep {
    /// 1-based source packet.
    pub source: usize,
    /// 0-based bit position within the source packet.
    pub bit: usize,
    /// 1-based encoded packet the bit was read from.
    pub packet: usize,
    /// Position within that packet.
    pub position: usize,
}

/// Zigzag decoding; all submatrix entries must be monomials or zero.
pub fn zigzag_decode(a: &GenMatrix, packets: &[Packet], source_len: usize) -> Result<Vec<Poly2>> {
    Ok(zigzag_decode_traced(a, packets, source_len)?.0)
}

/// Zigzag decoding that also returns the order in which bits were resolved.
///
/// Exposed bits are taken lowest packet position first, so the path walks
/// from the front of the packets.
pub fn zigzag_decode_traced(
    a: &GenMatrix,
    packets: &[Packet],
    source_len: usize,
) -> Result<(Vec<Poly2>, Vec<ZigzagStep>)> {
    let indices = check_packets(a, packets, source_len)?;
    let k = a.k();
    let sub = a.submatrix(&indices)?;
    // shifts[p][j]: Some(t) when source j enters packet p as z^t
    let mut shifts = vec![vec![None; k]; k];
    for (p, &idx) in indices.iter().enumerate() {
        for (j, row) in shifts[p].iter_mut().enumerate() {
            let e = sub.get(j, p);
            if e.is_zero() {
                continue;
            }
            if !e.is_monomial() {
                return Err(Error::NotMonomialMatrix {
                    row: j + 1,
                    index: idx,
                });
            }
            *row = e.lowest_term();
        }
    }
    let lens: Vec<usize> = indices
        .iter()
        .map(|&i| source_len + a.overhead(i))
        .collect();
    let mut residual: Vec<Vec<bool>> = packets
        .iter()
        .zip(&lens)
        .map(|(p, &n)| p.bits.to_bits(n))
        .collect();
    let mut pending: Vec<Vec<u32>> = lens.iter().map(|&n| vec![0; n]).collect();
    for p in 0..k {
        for t in shifts[p].iter().flatten() {
            for b in 0..source_len {
                pending[p][b + t] += 1;
            }
        }
    }
    let mut heap = BinaryHeap::new();
    for (p, counts) in pending.iter().enumerate() {
        for (q, &c) in counts.iter().enumerate() {
            if c == 1 {
                heap.push(Reverse((q, p)));
            }
        }
    }
    let mut resolved = vec![vec![false; source_len]; k];
    let mut out = vec![vec![false; source_len]; k];
    let mut trace = Vec::with_capacity(k * source_len);
    while let Some(Reverse((q, p))) = heap.pop() {
        if pending[p][q] != 1 {
            continue;
        }
        let (j, b) = (0..k)
            .find_map(|j| {
                let t = shifts[p][j]?;
                let b = q.checked_sub(t)?;
                (b < source_len && !resolved[j][b]).then_some((j, b))
            })
            .expect("a pending count of one has an unresolved contributor");
        let value = residual[p][q];
        resolved[j][b] = true;
        out[j][b] = value;
        trace.push(ZigzagStep {
            source: j + 1,
            bit: b,
            packet: indices[p],
            position: q,
        });
        for pp in 0..k {
            if let Some(t) = shifts[pp][j] {
                let qq = b + t;
                residual[pp][qq] ^= value;
                pending[pp][qq] -= 1;
                if pending[pp][qq] == 1 {
                    heap.push(Reverse((qq, pp)));
                }
            }
        }
    }
    if trace.len() < k * source_len {
        return Err(Error::Stuck {
            resolved: trace.len(),
            total: k * source_len,
        });
    }
    if residual.iter().flatten().any(|&b| b) {
        return Err(Error::InconsistentPackets);
    }
    Ok((out.into_iter().map(Poly2::from_bits).collect(), trace))
}
