//! Generator matrices for SXOR, systematic SXOR and zigzag-decodable codes.
//!
//! A generator matrix is `K x N` over F2[z]. Column `j` describes encoded
//! packet `j + 1`: `c_j(z) = sum_i a_{i,j}(z) s_i(z)`. The overhead of a
//! packet is the largest entry degree in its column.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2m::{FieldCtx, MAX_DEGREE};
use crate::gf2poly::Poly2;
use crate::polymat::{FieldMatrix, PolyMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Sxor,
    Systematic,
    Zd3,
    User,
}

impl CodeKind {
    pub fn name(self) -> &'static str {
        match self {
            CodeKind::Sxor => "sxor",
            CodeKind::Systematic => "systematic",
            CodeKind::Zd3 => "zd3",
            CodeKind::User => "user",
        }
    }

    /// Kind tag used in packet files.
    pub fn tag(self) -> u8 {
        match self {
            CodeKind::User => 0,
            CodeKind::Sxor => 1,
            CodeKind::Systematic => 2,
            CodeKind::Zd3 => 3,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(CodeKind::User),
            1 => Some(CodeKind::Sxor),
            2 => Some(CodeKind::Systematic),
            3 => Some(CodeKind::Zd3),
            _ => None,
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sxor" => Ok(CodeKind::Sxor),
            "systematic" => Ok(CodeKind::Systematic),
            "zd3" => Ok(CodeKind::Zd3),
            "user" => Ok(CodeKind::User),
            _ => Err(Error::InvalidParams(format!("unknown code kind {s:?}"))),
        }
    }
}

/// Everything needed to rebuild a generator matrix deterministically.
///
/// `x` holds 1-based column positions of the identity block for systematic
/// codes. Zigzag and user codes carry `m = 0` and a zero modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub k: usize,
    pub n: usize,
    pub m: u32,
    pub g: Poly2,
    pub x: Option<Vec<usize>>,
}

impl CodeSpec {
    pub fn sxor(k: usize, n: usize, g: &Poly2) -> Result<Self> {
        let spec = Self {
            kind: CodeKind::Sxor,
            k,
            n,
            m: modulus_degree(g)?,
            g: g.clone(),
            x: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn systematic(k: usize, n: usize, g: &Poly2, x: &[usize]) -> Result<Self> {
        let spec = Self {
            kind: CodeKind::Systematic,
            k,
            n,
            m: modulus_degree(g)?,
            g: g.clone(),
            x: Some(x.to_vec()),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn zd3() -> Self {
        Self {
            kind: CodeKind::Zd3,
            k: 3,
            n: 6,
            m: 0,
            g: Poly2::zero(),
            x: None,
        }
    }

    pub fn user(k: usize, n: usize) -> Result<Self> {
        let spec = Self {
            kind: CodeKind::User,
            k,
            n,
            m: 0,
            g: Poly2::zero(),
            x: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.k == 0 || self.k > self.n {
            return bad(format!("need 1 <= K <= N, got K={}, N={}", self.k, self.n));
        }
        match self.kind {
            CodeKind::Sxor | CodeKind::Systematic => {
                if !(1..=MAX_DEGREE).contains(&self.m) {
                    return bad(format!(
                        "extension degree {} outside 1..={MAX_DEGREE}",
                        self.m
                    ));
                }
                let limit = (1usize << self.m) - 1;
                if self.n > limit {
                    return bad(format!("N={} exceeds 2^m-1={limit}", self.n));
                }
                FieldCtx::new(self.m, &self.g)?;
            }
            CodeKind::Zd3 => {
                if (self.k, self.n) != (3, 6) {
                    return bad("the built-in zigzag code is 3x6".into());
                }
            }
            CodeKind::User => {}
        }
        match (&self.x, self.kind) {
            (Some(x), CodeKind::Systematic) => {
                if x.len() != self.k {
                    return bad(format!("x has {} entries, expected K={}", x.len(), self.k));
                }
                if x.iter().any(|&v| v == 0 || v > self.n) {
                    return bad(format!("x entries must lie in 1..={}", self.n));
                }
                if !x.iter().all_unique() {
                    return bad("x entries must be distinct".into());
                }
            }
            (None, CodeKind::Systematic) => return bad("systematic codes need x".into()),
            (Some(_), _) => return bad("x is only meaningful for systematic codes".into()),
            (None, _) => {}
        }
        Ok(())
    }

    /// Rebuilds the generator matrix. User matrices cannot be rebuilt.
    pub fn build(&self) -> Result<GenMatrix> {
        self.validate()?;
        match self.kind {
            CodeKind::Sxor => build_sxor(self.k, self.n, &self.g),
            CodeKind::Systematic => {
                build_systematic_sxor(self.k, self.n, &self.g, self.x.as_deref().unwrap_or(&[]))
            }
            CodeKind::Zd3 => Ok(builtin_zd_k3()),
            CodeKind::User => Err(Error::InvalidParams(
                "user matrices must be loaded from a file".into(),
            )),
        }
    }
}

fn modulus_degree(g: &Poly2) -> Result<u32> {
    let d = g
        .degree()
        .ok_or_else(|| Error::InvalidParams("modulus is zero".into()))?;
    u32::try_from(d).map_err(|_| Error::UnsupportedDegree(u32::MAX))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metrics {
    pub l_max: usize,
    pub l_sum: usize,
    pub alpha: usize,
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l_max={} l_sum={} alpha={}",
            self.l_max, self.l_sum, self.alpha
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuboptimalityReport {
    pub suboptimal: bool,
    /// 1-based column sets whose submatrix has zero determinant.
    pub failing: Vec<Vec<usize>>,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrix {
    spec: CodeSpec,
    entries: PolyMatrix,
    overheads: Vec<usize>,
}

fn column_overheads(entries: &PolyMatrix) -> Vec<usize> {
    (0..entries.cols())
        .map(|j| {
            (0..entries.rows())
                .filter_map(|i| entries.get(i, j).degree())
                .max()
                .unwrap_or(0)
        })
        .collect()
}

impl GenMatrix {
    pub fn new(spec: CodeSpec, entries: PolyMatrix) -> Result<Self> {
        if entries.rows() != spec.k || entries.cols() != spec.n {
            return Err(Error::Dimension(format!(
                "entries are {}x{}, spec says {}x{}",
                entries.rows(),
                entries.cols(),
                spec.k,
                spec.n
            )));
        }
        let overheads = column_overheads(&entries);
        Ok(Self {
            spec,
            entries,
            overheads,
        })
    }

    /// Wraps arbitrary F2[z] entries as a user matrix.
    pub fn from_user(entries: PolyMatrix) -> Result<Self> {
        let spec = CodeSpec::user(entries.rows(), entries.cols())?;
        Self::new(spec, entries)
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &Poly2 {
        self.entries.get(row, col)
    }

    /// Overhead of each encoded packet, in column order.
    pub fn overheads(&self) -> &[usize] {
        &self.overheads
    }

    /// Overhead of 1-based packet `index`.
    pub fn overhead(&self, index: usize) -> usize {
        self.overheads[index - 1]
    }

    /// The `K x K` submatrix for 1-based packet indices, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Result<PolyMatrix> {
        if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > self.n()) {
            return Err(Error::InvalidPacket(format!(
                "packet index {i} outside 1..={}",
                self.n()
            )));
        }
        let cols: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        self.entries.select_columns(&cols)
    }

    /// `(l_max, l_sum, alpha)`, where alpha counts, per column, the number of
    /// shifted copies that must be XORed into the first one.
    pub fn metrics(&self) -> Metrics {
        let l_max = self.overheads.iter().copied().max().unwrap_or(0);
        let l_sum = self.overheads.iter().sum();
        let alpha = (0..self.n())
            .map(|j| {
                let terms: usize = (0..self.k()).map(|i| self.entry(i, j).weight()).sum();
                terms.saturating_sub(1)
            })
            .sum();
        Metrics {
            l_max,
            l_sum,
            alpha,
        }
    }

    /// Checks every `K`-column minor for a nonzero determinant.
    pub fn check_suboptimal(&self) -> SuboptimalityReport {
        let mut failing = Vec::new();
        let mut checked = 0;
        for cols in (0..self.n()).combinations(self.k()) {
            checked += 1;
            let sub = self
                .entries
                .select_columns(&cols)
                .expect("columns in range");
            if sub.determinant().expect("square").is_zero() {
                failing.push(cols.iter().map(|c| c + 1).collect());
            }
        }
        SuboptimalityReport {
            suboptimal: failing.is_empty(),
            failing,
            checked,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.entries
            .entries()
            .all(|e| e.is_zero() || e.is_monomial())
    }

    /// Serializes to the line-oriented `sxorgen v1` text format.
    pub fn to_text(&self) -> String {
        let s = &self.spec;
        let mut out = format!(
            "sxorgen v1 kind={} K={} N={} m={} g=0x{}",
            s.kind,
            s.k,
            s.n,
            s.m,
            s.g.to_hex()
        );
        if let Some(x) = &s.x {
            out.push_str(&format!(" x={}", x.iter().join(",")));
        }
        out.push('\n');
        for i in 0..s.k {
            out.push_str(&self.entries.row(i).iter().map(Poly2::to_hex).join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the `sxorgen v1` text format.
    ///
    /// Constructed kinds must carry reduced entries (degree `< m`) and must
    /// match the matrix rebuilt from the header.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
        let spec = parse_header(hline, header)?;

        let mut rows = Vec::with_capacity(spec.k);
        for r in 0..spec.k {
            let (ln, line) = lines.next().ok_or_else(|| {
                parse_err(hline + r + 1, 1, format!("expected {} matrix rows", spec.k))
            })?;
            let mut row = Vec::with_capacity(spec.n);
            let mut col = 1;
            for field in line.split(',') {
                let pos = col + field.len() - field.trim_start().len();
                let e = Poly2::from_hex(field).map_err(|_| {
                    parse_err(
                        ln,
                        pos,
                        format!("invalid hex coefficient mask {:?}", field.trim()),
                    )
                })?;
                if matches!(spec.kind, CodeKind::Sxor | CodeKind::Systematic)
                    && e.degree().is_some_and(|d| d >= spec.m as usize)
                {
                    return Err(parse_err(
                        ln,
                        pos,
                        format!(
                            "entry {e} is not reduced modulo a degree-{} modulus",
                            spec.m
                        ),
                    ));
                }
                row.push(e);
                col += field.len() + 1;
            }
            if row.len() != spec.n {
                return Err(parse_err(
                    ln,
                    1,
                    format!("expected {} entries, found {}", spec.n, row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, 1, "unexpected trailing content"));
        }
        let gm = GenMatrix::new(spec.clone(), PolyMatrix::from_rows(rows)?)?;
        if spec.kind != CodeKind::User && spec.build()? != gm {
            return Err(parse_err(
                hline + 1,
                1,
                format!(
                    "entries do not match the {} construction in the header",
                    spec.kind
                ),
            ));
        }
        Ok(gm)
    }
}

fn parse_err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        msg: msg.into(),
    }
}

fn parse_header(ln: usize, header: &str) -> Result<CodeSpec> {
    let mut kind = None;
    let (mut k, mut n, mut m, mut g, mut x) = (None, None, None, None, None);
    let mut seen_magic = 0;
    let mut offset = 0;
    for tok in header.split_whitespace() {
        let col = header[offset..].find(tok).map_or(1, |p| offset + p + 1);
        offset = col - 1 + tok.len();
        if seen_magic == 0 {
            if tok != "sxorgen" {
                return Err(parse_err(ln, col, "expected magic `sxorgen`"));
            }
            seen_magic = 1;
            continue;
        }
        if seen_magic == 1 {
            if tok != "v1" {
                return Err(parse_err(ln, col, format!("unsupported version {tok:?}")));
            }
            seen_magic = 2;
            continue;
        }
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(ln, col, format!("expected key=value, found {tok:?}")))?;
        let num = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| parse_err(ln, col, format!("invalid number {v:?} for {key}")))
        };
        match key {
            "kind" => {
                kind = Some(
                    val.parse::<CodeKind>()
                        .map_err(|e| parse_err(ln, col, e.to_string()))?,
                )
            }
            "K" => k = Some(num(val)?),
            "N" => n = Some(num(val)?),
            "m" => m = Some(num(val)? as u32),
            "g" => g = Some(Poly2::from_hex(val).map_err(|e| parse_err(ln, col, e.to_string()))?),
            "x" => x = Some(val.split(',').map(num).collect::<Result<Vec<_>>>()?),
            _ => return Err(parse_err(ln, col, format!("unknown header key {key:?}"))),
        }
    }
    if seen_magic < 2 {
        return Err(parse_err(ln, 1, "expected header `sxorgen v1 ...`"));
    }
    let missing = |what: &str| parse_err(ln, 1, format!("header is missing {what}"));
    let spec = CodeSpec {
        kind: kind.ok_or_else(|| missing("kind"))?,
        k: k.ok_or_else(|| missing("K"))?,
        n: n.ok_or_else(|| missing("N"))?,
        m: m.ok_or_else(|| missing("m"))?,
        g: g.ok_or_else(|| missing("g"))?,
        x,
    };
    if matches!(spec.kind, CodeKind::Sxor | CodeKind::Systematic)
        && spec.g.degree() != Some(spec.m as usize)
    {
        return Err(parse_err(
            ln,
            1,
            format!("modulus {} does not have degree m={}", spec.g, spec.m),
        ));
    }
    spec.validate()
        .map_err(|e| parse_err(ln, 1, e.to_string()))?;
    Ok(spec)
}

/// Construction 1: `a_{i,j} = <z^(i*j)>` (0-based), a reduced Vandermonde matrix.
pub fn build_sxor(k: usize, n: usize, g: &Poly2) -> Result<GenMatrix> {
    let spec = CodeSpec::sxor(k, n, g)?;
    let ctx = FieldCtx::new(spec.m, g)?;
    let v = FieldMatrix::vandermonde(k, n, &ctx)?;
    GenMatrix::new(spec, v.to_poly_matrix())
}

/// Construction 2: `<V_x^{-1} V>`, systematic at the 1-based columns `x`.
pub fn build_systematic_sxor(k: usize, n: usize, g: &Poly2, x: &[usize]) -> Result<GenMatrix> {
    let spec = CodeSpec::systematic(k, n, g, x)?;
    let ctx = FieldCtx::new(spec.m, g)?;
    let v = FieldMatrix::vandermonde(k, n, &ctx)?;
    let cols: Vec<usize> = x.iter().map(|c| c - 1).collect();
    let vx_inv = v.select_columns(&cols)?.inverse()?;
    let a = vx_inv.mul(&v)?;
    GenMatrix::new(spec, a.to_poly_matrix())
}

/// The `K = 3`, `N = 6` zigzag-decodable matrix with monomial entries.
pub fn builtin_zd_k3() -> GenMatrix {
    let o = Poly2::zero;
    let i = Poly2::one;
    let z = || Poly2::monomial(1);
    let rows = vec![
        vec![i(), o(), o(), i(), z(), z()],
        vec![o(), i(), o(), z(), i(), z()],
        vec![o(), o(), i(), z(), z(), i()],
    ];
    GenMatrix::new(
        CodeSpec::zd3(),
        PolyMatrix::from_rows(rows).expect("rectangular"),
    )
    .expect("3x6")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    fn g1() -> Poly2 {
        p("z^3+z+1")
    }

    fn rows(m: &GenMatrix) -> Vec<Vec<String>> {
        (0..m.k())
            .map(|i| (0..m.n()).map(|j| m.entry(i, j).to_string()).collect())
            .collect()
    }

    #[test]
    fn sxor_example_matrix() {
        let a = build_sxor(3, 7, &g1()).unwrap();
        assert_eq!(
            rows(&a),
            vec![
                vec!["1", "1", "1", "1", "1", "1", "1"],
                vec!["1", "z", "z^2", "z+1", "z^2+z", "z^2+z+1", "z^2+1"],
                vec!["1", "z^2", "z^2+z", "z^2+1", "z", "z+1", "z^2+z+1"],
            ]
        );
        assert_eq!(a.metrics().l_max, 2);
    }

    #[test]
    fn single_row_is_all_ones() {
        let a = build_sxor(1, 7, &g1()).unwrap();
        assert!((0..7).all(|j| a.entry(0, j).is_one()));
    }

    #[test]
    fn systematic_example_matrix() {
        let a = build_systematic_sxor(3, 7, &g1(), &[1, 3, 4]).unwrap();
        assert_eq!(
            rows(&a),
            vec![
                vec!["1", "z^2+z", "0", "0", "1", "z^2+z+1", "z^2+z"],
                vec!["0", "z^2+1", "1", "0", "1", "z^2", "z^2"],
                vec!["0", "z", "0", "1", "1", "z", "z+1"],
            ]
        );
    }

    #[test]
    fn systematic_123_matrix() {
        let a = build_systematic_sxor(3, 7, &g1(), &[1, 2, 3]).unwrap();
        assert_eq!(
            rows(&a),
            vec![
                vec!["1", "0", "0", "z+1", "z", "1", "z+1"],
                vec!["0", "1", "0", "z^2+1", "z^2+1", "1", "z^2"],
                vec!["0", "0", "1", "z^2+z+1", "z^2+z", "1", "z^2+z"],
            ]
        );
    }

    #[test]
    fn zd_matrix_shape() {
        let a = builtin_zd_k3();
        assert!(a.entry(0, 3).is_one());
        assert_eq!(a.entry(1, 3), &p("z"));
        assert_eq!(a.entry(2, 3), &p("z"));
        assert_eq!(a.metrics().l_max, 1);
        let rep = a.check_suboptimal();
        assert!(rep.suboptimal);
        assert_eq!(rep.checked, 20);
    }

    #[test]
    fn repeated_column_fails_check() {
        let one = Poly2::one;
        let o = Poly2::zero;
        let entries = PolyMatrix::from_rows(vec![
            vec![one(), one(), one(), o(), one(), p("z")],
            vec![one(), one(), o(), one(), p("z"), one()],
            vec![one(), one(), o(), o(), one(), one()],
        ])
        .unwrap();
        let rep = GenMatrix::from_user(entries).unwrap().check_suboptimal();
        assert!(!rep.suboptimal);
        assert!(rep.failing.contains(&vec![1, 2, 3]));
        for c in 3..=6 {
            assert!(rep.failing.contains(&vec![1, 2, c]));
        }
    }

    #[test]
    fn metrics_examples() {
        let a = build_systematic_sxor(3, 7, &g1(), &[1, 3, 4]).unwrap();
        assert_eq!(
            a.metrics(),
            Metrics {
                l_max: 2,
                l_sum: 6,
                alpha: 14
            }
        );
        let b = build_sxor(4, 7, &g1()).unwrap();
        assert_eq!(
            b.metrics(),
            Metrics {
                l_max: 2,
                l_sum: 12,
                alpha: 36
            }
        );
        let id = GenMatrix::from_user(PolyMatrix::identity(4)).unwrap();
        assert_eq!(id.metrics(), Metrics::default());
    }

    #[test]
    fn zero_column_has_zero_overhead() {
        let m = PolyMatrix::from_rows(vec![vec![Poly2::zero(), p("z^5")]]).unwrap();
        let a = GenMatrix::from_user(m).unwrap();
        assert_eq!(a.overheads(), &[0, 5]);
        assert_eq!(a.metrics().alpha, 0);
    }

    #[test]
    fn invalid_params() {
        assert!(build_sxor(4, 8, &g1()).is_err());
        assert!(build_sxor(0, 7, &g1()).is_err());
        assert!(build_sxor(3, 7, &p("z^3+1")).is_err());
        assert!(build_systematic_sxor(3, 7, &g1(), &[1, 1, 2]).is_err());
        assert!(build_systematic_sxor(3, 7, &g1(), &[1, 2, 8]).is_err());
        assert!(build_systematic_sxor(3, 7, &g1(), &[1, 2]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = build_sxor(3, 7, &g1()).unwrap();
        let text = a.to_text();
        assert!(text.starts_with("sxorgen v1 kind=sxor K=3 N=7 m=3 g=0xb\n"));
        assert_eq!(text.lines().nth(2).unwrap(), "1,2,4,3,6,7,5");
        assert_eq!(GenMatrix::from_text(&text).unwrap(), a);

        let s = build_systematic_sxor(3, 7, &g1(), &[1, 3, 4]).unwrap();
        assert_eq!(GenMatrix::from_text(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn text_is_whitespace_insensitive() {
        let text = "  sxorgen   v1 kind=zd3 K=3  N=6 m=0 g=0x0 \n\n 1, 0,0 ,1,2,2\n0,1,0,2,1,2\n0,0,1,2,2,1\n";
        let parsed = GenMatrix::from_text(text);
        assert_eq!(parsed.unwrap(), builtin_zd_k3());
    }

    #[test]
    fn unreduced_entry_rejected_for_constructed_kind() {
        let text = "sxorgen v1 kind=sxor K=1 N=3 m=2 g=0x7\n1,1,8\n";
        match GenMatrix::from_text(text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        let user = "sxorgen v1 kind=user K=1 N=3 m=0 g=0x0\n1,1,8\n";
        assert_eq!(GenMatrix::from_text(user).unwrap().metrics().l_max, 3);
    }

    #[test]
    fn zd_as_user_matrix() {
        let text = builtin_zd_k3().to_text().replace("kind=zd3", "kind=user");
        let a = GenMatrix::from_text(&text).unwrap();
        assert_eq!(a.spec().kind, CodeKind::User);
        assert_eq!(a.metrics().l_max, 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = GenMatrix::from_text("sxorgen v2 kind=sxor").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 1,
                    column: 9,
                    ..
                }
            ),
            "{e}"
        );
        let e = GenMatrix::from_text("sxorgen v1 kind=sxor K=1 N=3 m=2 g=0x7\n1,1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e =
            GenMatrix::from_text("sxorgen v1 kind=sxor K=1 N=3 m=2 g=0x7\n1,1,2\n").unwrap_err();
        assert!(e.to_string().contains("do not match"), "{e}");
        let e =
            GenMatrix::from_text("sxorgen v1 kind=sxor K=1 N=3 m=2 g=0x7\n1,1,q\n").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 2,
                    column: 5,
                    ..
                }
            ),
            "{e}"
        );
    }
}
