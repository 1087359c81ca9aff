//! The `<stem>.sxmeta` sidecar written next to packet files.
//!
//! One line: `len=<bytes> k=<K> n=<N> g=<hex> kind=<kind> [x=i,j,..]`.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use sxor::{CodeKind, CodeSpec, Poly2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub len: usize,
    pub spec: CodeSpec,
}

impl Meta {
    /// Bytes per source packet.
    pub fn chunk_bytes(&self) -> usize {
        self.len.div_ceil(self.spec.k)
    }

    /// Source packet length in bits.
    pub fn source_bits(&self) -> usize {
        8 * self.chunk_bytes()
    }
}

impl fmt::Display for Meta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.spec;
        write!(
            f,
            "len={} k={} n={} g=0x{} kind={}",
            self.len,
            s.k,
            s.n,
            s.g.to_hex(),
            s.kind
        )?;
        if let Some(x) = &s.x {
            let x: Vec<String> = x.iter().map(usize::to_string).collect();
            write!(f, " x={}", x.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Meta {
    type Err = anyhow::Error;

    fn from_str(text: &str) -> anyhow::Result<Self> {
        let (mut len, mut k, mut n, mut g, mut kind, mut x) = (None, None, None, None, None, None);
        for field in text.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| anyhow!("malformed field {field:?}"))?;
            let num = || {
                value
                    .parse::<usize>()
                    .with_context(|| format!("bad {key} value {value:?}"))
            };
            match key {
                "len" => len = Some(num()?),
                "k" => k = Some(num()?),
                "n" => n = Some(num()?),
                "g" => g = Some(Poly2::from_hex(value)?),
                "kind" => kind = Some(value.parse::<CodeKind>()?),
                "x" => x = Some(parse_list(value)?),
                _ => bail!("unknown field {key:?}"),
            }
        }
        let missing = |name: &str| anyhow!("missing {name}=");
        let kind = kind.ok_or_else(|| missing("kind"))?;
        let spec = CodeSpec {
            kind,
            k: k.ok_or_else(|| missing("k"))?,
            n: n.ok_or_else(|| missing("n"))?,
            m: 0,
            g: g.ok_or_else(|| missing("g"))?,
            x,
        };
        let spec = match kind {
            CodeKind::Sxor => CodeSpec::sxor(spec.k, spec.n, &spec.g)?,
            CodeKind::Systematic => {
                CodeSpec::systematic(spec.k, spec.n, &spec.g, spec.x.as_deref().unwrap_or(&[]))?
            }
            CodeKind::Zd3 | CodeKind::User => {
                spec.validate()?;
                spec
            }
        };
        let len = len.ok_or_else(|| missing("len"))?;
        if len == 0 {
            bail!("len must be positive");
        }
        Ok(Meta { len, spec })
    }
}

pub fn parse_list(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .with_context(|| format!("bad list entry {v:?}"))
        })
        .collect()
}
