//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON document,
//! so the same functions run natively under `cargo test`.

use serde_json::{json, Value};
use sxor::codec::{map_decode_with_info, zigzag_decode_traced};
use sxor::gf2m::{default_modulus, degree_for_length};
use sxor::{
    emit_report, encode, enumerate_classes, CodeKind, CodeSpec, GenMatrix, Poly2, ReportFormat,
};
use wasm_bindgen::prelude::*;

/// Longest message the erasure demo accepts, in bytes.
pub const MAX_MESSAGE: usize = 4096;

/// Steps of the zigzag path returned to the page.
const TRACE_LIMIT: usize = 64;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.parse::<usize>()
                .map_err(|_| format!("{v:?} is not a packet number"))
        })
        .collect()
}

fn modulus(g_hex: &str, n: usize) -> Result<Poly2, String> {
    if g_hex.trim().is_empty() {
        default_modulus(degree_for_length(n)).map_err(err)
    } else {
        Poly2::from_hex(g_hex.trim()).map_err(err)
    }
}

fn code(kind: &str, k: usize, n: usize, g_hex: &str, x: &str) -> Result<GenMatrix, String> {
    let spec = match kind.parse::<CodeKind>().map_err(err)? {
        CodeKind::Sxor => CodeSpec::sxor(k, n, &modulus(g_hex, n)?).map_err(err)?,
        CodeKind::Systematic => {
            CodeSpec::systematic(k, n, &modulus(g_hex, n)?, &parse_list(x)?).map_err(err)?
        }
        CodeKind::Zd3 => CodeSpec::zd3(),
        CodeKind::User => return Err("user matrices are not available in the demo".into()),
    };
    spec.build().map_err(err)
}

fn matrix_json(a: &GenMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..a.k())
        .map(|i| (0..a.n()).map(|j| a.entry(i, j).to_string()).collect())
        .collect();
    let m = a.metrics();
    json!({
        "K": a.k(),
        "N": a.n(),
        "kind": a.spec().kind.name(),
        "g": format!("0x{}", a.spec().g.to_hex()),
        "rows": rows,
        "overheads": a.overheads(),
        "l_max": m.l_max,
        "l_sum": m.l_sum,
        "alpha": m.alpha,
    })
}

/// Generator matrix, overheads and the any-K-columns check.
#[wasm_bindgen]
pub fn build_code(kind: &str, k: usize, n: usize, g_hex: &str, x: &str) -> Result<String, String> {
    let a = code(kind, k, n, g_hex, x)?;
    let rep = a.check_suboptimal();
    let mut doc = matrix_json(&a);
    doc["suboptimal"] = json!(rep.suboptimal);
    doc["minors_checked"] = json!(rep.checked);
    doc["singular"] = json!(rep.failing);
    Ok(doc.to_string())
}

/// Equivalence classes of systematic codes, in the report JSON schema.
#[wasm_bindgen]
pub fn classify(k: usize, n: usize, g_hex: &str) -> Result<String, String> {
    let g = modulus(g_hex, n)?;
    if n > 15 {
        return Err("the demo enumerates classes for N <= 15 only".into());
    }
    let report = enumerate_classes(k, n, &g).map_err(err)?;
    Ok(emit_report(&[report], ReportFormat::Json))
}

/// Encodes `message`, drops the `erased` packets and decodes from the first
/// `K` survivors with `decoder` (`map` or `zigzag`).
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn erasure_round_trip(
    kind: &str,
    k: usize,
    n: usize,
    g_hex: &str,
    x: &str,
    message: &str,
    erased: &str,
    decoder: &str,
) -> Result<String, String> {
    let a = code(kind, k, n, g_hex, x)?;
    let data = message.as_bytes();
    if data.is_empty() {
        return Err("type a message first".into());
    }
    if data.len() > MAX_MESSAGE {
        return Err(format!("messages are limited to {MAX_MESSAGE} bytes"));
    }
    let chunk = data.len().div_ceil(a.k());
    let sources: Vec<Poly2> = (0..a.k())
        .map(|j| {
            Poly2::from_bytes(&data[(j * chunk).min(data.len())..((j + 1) * chunk).min(data.len())])
        })
        .collect();
    let len = 8 * chunk;
    let packets = encode(&a, &sources, len).map_err(err)?;

    let erased = parse_list(erased)?;
    if let Some(&bad) = erased.iter().find(|&&i| i == 0 || i > a.n()) {
        return Err(format!("packet {bad} does not exist"));
    }
    let survivors: Vec<_> = packets
        .iter()
        .filter(|p| !erased.contains(&p.index))
        .take(a.k())
        .cloned()
        .collect();
    if survivors.len() < a.k() {
        return Err(format!(
            "only {} packets survive; {} are needed",
            survivors.len(),
            a.k()
        ));
    }
    let used: Vec<usize> = survivors.iter().map(|p| p.index).collect();

    let mut doc = json!({
        "packets": packets.iter().map(|p| json!({
            "index": p.index,
            "bits": bit_string(&p.bits, p.payload_bits),
            "erased": erased.contains(&p.index),
        })).collect::<Vec<_>>(),
        "used": used,
        "L": len,
    });
    let decoded = match decoder {
        "map" => {
            let (out, info) = map_decode_with_info(&a, &survivors, len).map_err(err)?;
            doc["det"] = json!(info.det.to_string());
            doc["shift"] = json!(info.shift);
            doc["filter"] = json!(info.filter.to_string());
            out
        }
        "zigzag" => {
            let (out, trace) = zigzag_decode_traced(&a, &survivors, len).map_err(err)?;
            doc["steps"] = json!(trace.len());
            doc["trace"] = trace
                .iter()
                .take(TRACE_LIMIT)
                .map(|s| json!({"source": s.source, "bit": s.bit, "packet": s.packet, "position": s.position}))
                .collect();
            out
        }
        other => return Err(format!("unknown decoder {other:?}")),
    };
    let mut bytes: Vec<u8> = decoded.iter().flat_map(|s| s.to_bytes(chunk)).collect();
    bytes.truncate(data.len());
    doc["ok"] = json!(bytes == data);
    doc["decoded"] = json!(String::from_utf8_lossy(&bytes));
    Ok(doc.to_string())
}

/// Packet bits in stream order, first bit on the left.
fn bit_string(p: &Poly2, len: usize) -> String {
    p.to_bits(len)
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn build_reports_metrics() {
        let v = parse(&build_code("systematic", 3, 7, "0xB", "1,3,4").unwrap());
        assert_eq!(v["l_sum"], 6);
        assert_eq!(v["alpha"], 14);
        assert_eq!(v["rows"][0][1], "z^2+z");
        assert_eq!(v["suboptimal"], true);
        assert_eq!(v["minors_checked"], 35);
        let zd = parse(&build_code("zd3", 3, 6, "", "").unwrap());
        assert_eq!(zd["l_max"], 1);
        assert!(build_code("sxor", 9, 7, "", "").is_err());
        assert!(build_code("user", 2, 3, "", "").is_err());
    }

    #[test]
    fn classify_returns_five_classes() {
        let v = parse(&classify(3, 7, "0xB").unwrap());
        assert_eq!(v[0]["classes"].as_array().unwrap().len(), 5);
        assert_eq!(v[0]["best"]["rep"], json!([1, 3, 4]));
    }

    #[test]
    fn round_trip_with_both_decoders() {
        let v = parse(
            &erasure_round_trip("sxor", 3, 7, "0xB", "", "hello, world", "1,2,3,7", "map").unwrap(),
        );
        assert_eq!(v["ok"], true);
        assert_eq!(v["decoded"], "hello, world");
        assert_eq!(v["used"], json!([4, 5, 6]));
        assert_eq!(v["packets"][0]["erased"], true);

        let z =
            parse(&erasure_round_trip("zd3", 3, 6, "", "", "zigzag!", "1,2,3", "zigzag").unwrap());
        assert_eq!(z["ok"], true);
        assert_eq!(z["steps"], 3 * 8 * 3);
        let m = parse(&erasure_round_trip("zd3", 3, 6, "", "", "zigzag!", "1,2,3", "map").unwrap());
        assert_eq!(m["det"], "z+1");
    }

    #[test]
    fn round_trip_errors() {
        assert!(erasure_round_trip("sxor", 3, 7, "", "", "msg", "1,2,3,4,5", "map").is_err());
        assert!(erasure_round_trip("sxor", 3, 7, "", "", "", "", "map").is_err());
        assert!(erasure_round_trip("sxor", 3, 7, "", "", "msg", "9", "map").is_err());
        assert!(erasure_round_trip("sxor", 3, 7, "", "", "msg", "", "zigzag").is_err());
        assert!(erasure_round_trip("sxor", 3, 7, "", "", "msg", "", "magic").is_err());
    }
}
