//! Shift-and-XOR (SXOR) erasure codes.
//!
//! Packets are polynomials over F2 and encoding only shifts and XORs them:
//! `c_i(z) = sum_j a_{j,i}(z) s_j(z)`. Generator matrices come from a
//! Vandermonde matrix over GF(2^m) whose entries are read back as reduced
//! polynomials. Decoding from any `K` packets multiplies by the adjugate of
//! the chosen submatrix and finishes with one exact polynomial division; codes
//! with monomial entries can also be decoded by zigzag elimination.
//!
//! ```
//! use sxor::{build_sxor, encode, map_decode, Poly2};
//!
//! let g: Poly2 = "z^3+z+1".parse().unwrap();
//! let code = build_sxor(3, 7, &g).unwrap();
//! let sources: Vec<Poly2> = ["z^5+1", "z^2+z", "z^7"].iter().map(|s| s.parse().unwrap()).collect();
//! let packets = encode(&code, &sources, 8).unwrap();
//! let survivors = vec![packets[1].clone(), packets[4].clone(), packets[6].clone()];
//! assert_eq!(map_decode(&code, &survivors, 8).unwrap(), sources);
//! ```

pub mod analysis;
pub mod codec;
pub mod codes;
pub mod error;
pub mod gf2m;
pub mod gf2poly;
pub mod packetfile;
pub mod polymat;
pub mod reference;

pub use analysis::{
    best_systematic, compare_codes, emit_report, enumerate_classes, matrices_equivalent,
    shift_sequence, ClassReport, ReportFormat,
};
pub use codec::{encode, encode_counted, map_decode, zigzag_decode, MapDecoder, Packet};
pub use codes::{
    build_sxor, build_systematic_sxor, builtin_zd_k3, CodeKind, CodeSpec, GenMatrix, Metrics,
};
pub use error::{Error, Result};
pub use gf2m::{FieldCtx, FieldElem};
pub use gf2poly::Poly2;
pub use polymat::{FieldMatrix, PolyMatrix};
