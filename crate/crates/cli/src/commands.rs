use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use serde_json::json;
use sxor::analysis::compare_codes;
use sxor::gf2m::{default_modulus, degree_for_length};
use sxor::{
    emit_report, enumerate_classes, map_decode, zigzag_decode, CodeKind, CodeSpec, GenMatrix,
    Packet, Poly2, ReportFormat,
};

use crate::meta::{parse_list, Meta};
use crate::{CmdResult, CodeArgs, Decoder, Failure, Format, Kind};

pub const DEFAULT_G_VAR: &str = "SXOR_DEFAULT_G";

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(anyhow!("{msg}"))
}

fn report_format(f: Format) -> ReportFormat {
    match f {
        Format::Json => ReportFormat::Json,
        Format::Markdown => ReportFormat::Markdown,
    }
}

/// The modulus for codes of length `n`: `--g` if given, else the
/// environment override when its degree fits, else the built-in table.
fn modulus(g: Option<&str>, n: usize) -> Result<Poly2, Failure> {
    if let Some(hex) = g {
        return Poly2::from_hex(hex).map_err(|e| usage(format!("--g {hex:?}: {e}")));
    }
    let m = degree_for_length(n);
    if let Ok(hex) = std::env::var(DEFAULT_G_VAR) {
        let g =
            Poly2::from_hex(&hex).map_err(|e| usage(format!("{DEFAULT_G_VAR}={hex:?}: {e}")))?;
        if g.degree() == Some(m as usize) {
            return Ok(g);
        }
    }
    default_modulus(m).map_err(usage)
}

fn load_matrix(path: &Path) -> Result<GenMatrix, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GenMatrix::from_text(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// Builds or loads the generator matrix described by the code flags.
fn resolve_code(args: &CodeArgs) -> Result<GenMatrix, Failure> {
    if let Some(path) = &args.matrix {
        let a = load_matrix(path)?;
        if args.k.is_some_and(|k| k != a.k()) || args.n.is_some_and(|n| n != a.n()) {
            return Err(usage(format!(
                "{} is {}x{}, which contradicts --k/--n",
                path.display(),
                a.k(),
                a.n()
            )));
        }
        return Ok(a);
    }
    let spec = match args.kind {
        Kind::Zd3 => {
            let spec = CodeSpec::zd3();
            if args.k.is_some_and(|k| k != spec.k) || args.n.is_some_and(|n| n != spec.n) {
                return Err(usage("the zd3 code has K=3, N=6"));
            }
            spec
        }
        Kind::User => return Err(usage("user codes need --matrix <file>")),
        Kind::Sxor | Kind::Systematic => {
            let k = args.k.ok_or_else(|| usage("--k is required"))?;
            let n = args.n.ok_or_else(|| usage("--n is required"))?;
            let g = modulus(args.g.as_deref(), n)?;
            if args.kind == Kind::Sxor {
                if args.x.is_some() {
                    return Err(usage("--x only applies to --kind systematic"));
                }
                CodeSpec::sxor(k, n, &g).map_err(usage)?
            } else {
                let x = args
                    .x
                    .as_deref()
                    .ok_or_else(|| usage("--kind systematic needs --x"))?;
                let x = parse_list(x).map_err(Failure::Usage)?;
                CodeSpec::systematic(k, n, &g, &x).map_err(usage)?
            }
        }
    };
    spec.build().map_err(usage)
}

fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

pub fn encode(input: &Path, code: &CodeArgs, out: Option<&Path>) -> CmdResult {
    let a = resolve_code(code)?;
    let data = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    if data.is_empty() {
        return Err(usage(format!(
            "{} is empty; nothing to encode",
            input.display()
        )));
    }
    let meta = Meta {
        len: data.len(),
        spec: a.spec().clone(),
    };
    let chunk = meta.chunk_bytes();
    let sources: Vec<Poly2> = (0..a.k())
        .map(|j| {
            let start = (j * chunk).min(data.len());
            let end = ((j + 1) * chunk).min(data.len());
            Poly2::from_bytes(&data[start..end])
        })
        .collect();
    let packets = sxor::encode(&a, &sources, meta.source_bits())?;

    let stem = input
        .file_stem()
        .ok_or_else(|| usage(format!("{} has no file name", input.display())))?
        .to_string_lossy()
        .into_owned();
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => input.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    if !dir.as_os_str().is_empty() {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for p in &packets {
        let path = dir.join(format!("{stem}.p{}.sxp", p.index));
        write(&path, &p.to_bytes()?)?;
        println!("{}", path.display());
    }
    let meta_path = dir.join(format!("{stem}.sxmeta"));
    write(&meta_path, format!("{meta}\n").as_bytes())?;
    println!("{}", meta_path.display());
    Ok(())
}

/// `dir/name.p3.sxp` -> `dir/name.sxmeta`.
fn sidecar_for(packet: &Path) -> Option<PathBuf> {
    let name = packet.file_name()?.to_str()?;
    let rest = name.strip_suffix(".sxp")?;
    let (stem, index) = rest.rsplit_once(".p")?;
    if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(packet.with_file_name(format!("{stem}.sxmeta")))
}

pub fn decode(
    paths: &[PathBuf],
    decoder: Decoder,
    meta_path: Option<&Path>,
    matrix: Option<&Path>,
    out: &Path,
) -> CmdResult {
    let meta_path = match meta_path {
        Some(p) => p.to_path_buf(),
        None => sidecar_for(&paths[0]).ok_or_else(|| {
            usage("cannot derive the sidecar path from the packet name; pass --meta")
        })?,
    };
    let meta_text = fs::read_to_string(&meta_path)
        .with_context(|| format!("reading {}", meta_path.display()))?;
    let meta: Meta = meta_text
        .parse()
        .with_context(|| format!("parsing {}", meta_path.display()))?;
    let k = meta.spec.k;
    if paths.len() != k {
        return Err(usage(format!(
            "decoding needs exactly K={k} packet files, got {}",
            paths.len()
        )));
    }

    let a = match (meta.spec.kind, matrix) {
        (CodeKind::User, None) => return Err(usage("user codes need --matrix <file>")),
        (_, Some(path)) => {
            let a = load_matrix(path)?;
            if a.spec().kind != CodeKind::User && *a.spec() != meta.spec {
                bail_failed(format!(
                    "{} does not describe the code in {}",
                    path.display(),
                    meta_path.display()
                ))?;
            }
            if (a.k(), a.n()) != (meta.spec.k, meta.spec.n) {
                bail_failed(format!(
                    "{} is {}x{}, packets are {}x{}",
                    path.display(),
                    a.k(),
                    a.n(),
                    k,
                    meta.spec.n
                ))?;
            }
            a
        }
        (_, None) => meta.spec.build()?,
    };

    let mut packets = Vec::with_capacity(k);
    for path in paths {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let p =
            Packet::from_bytes(&bytes).with_context(|| format!("parsing {}", path.display()))?;
        if p.spec != meta.spec || p.source_len != meta.source_bits() {
            bail_failed(format!(
                "{} does not match {}",
                path.display(),
                meta_path.display()
            ))?;
        }
        packets.push(p);
    }

    let sources = match decoder {
        Decoder::Map => map_decode(&a, &packets, meta.source_bits()),
        Decoder::Zigzag => zigzag_decode(&a, &packets, meta.source_bits()),
    }
    .context("decoding failed")?;

    let chunk = meta.chunk_bytes();
    let mut data = Vec::with_capacity(chunk * k);
    for s in &sources {
        data.extend_from_slice(&s.to_bytes(chunk));
    }
    data.truncate(meta.len);
    write(out, &data)?;
    Ok(())
}

fn bail_failed(msg: String) -> CmdResult {
    Err(Failure::Failed(anyhow!(msg)))
}

pub fn analyze(code: &CodeArgs, compare: bool, format: Format) -> CmdResult {
    if compare {
        let n = code.n.unwrap_or(7);
        if n < 3 {
            return Err(usage("--compare needs N >= 3"));
        }
        let g = modulus(code.g.as_deref(), n)?;
        let ks: Vec<usize> = (2..n).collect();
        let table = compare_codes(n, &g, &ks).map_err(usage)?;
        print!("{}", table.render(report_format(format)));
        return Ok(());
    }
    let a = resolve_code(code)?;
    let s = a.spec();
    let m = a.metrics();
    match format {
        Format::Json => {
            let doc = json!({
                "kind": s.kind.name(),
                "K": s.k,
                "N": s.n,
                "g": format!("0x{}", s.g.to_hex()),
                "x": s.x,
                "overheads": a.overheads(),
                "l_max": m.l_max,
                "l_sum": m.l_sum,
                "alpha": m.alpha,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Markdown => {
            println!(
                "# {} code, K={} N={} g=0x{}\n",
                s.kind,
                s.k,
                s.n,
                s.g.to_hex()
            );
            if let Some(x) = &s.x {
                println!("x = {x:?}\n");
            }
            println!(
                "| l_max | l_sum | alpha |\n|---|---|---|\n| {} | {} | {} |\n",
                m.l_max, m.l_sum, m.alpha
            );
            let per: Vec<String> = a.overheads().iter().map(usize::to_string).collect();
            println!("per-packet overhead: {}", per.join(" "));
        }
    }
    Ok(())
}

pub fn classify(k: usize, n: usize, g: Option<&str>, format: Format) -> CmdResult {
    let g = modulus(g, n)?;
    CodeSpec::systematic(k, n, &g, &(1..=k).collect::<Vec<_>>()).map_err(usage)?;
    let report = enumerate_classes(k, n, &g)?;
    print!("{}", emit_report(&[report], report_format(format)));
    Ok(())
}

pub fn check(code: &CodeArgs) -> CmdResult {
    let a = resolve_code(code)?;
    let rep = a.check_suboptimal();
    println!("sub-optimal: {}", rep.suboptimal);
    println!("checked: {} minors", rep.checked);
    for cols in &rep.failing {
        let cols: Vec<String> = cols.iter().map(usize::to_string).collect();
        println!("singular: {}", cols.join(","));
    }
    if rep.suboptimal {
        Ok(())
    } else {
        Err(Failure::Failed(anyhow!(
            "{} of {} minors are singular",
            rep.failing.len(),
            rep.checked
        )))
    }
}

pub fn matrix_print(code: &CodeArgs, out: Option<&Path>) -> CmdResult {
    let a = resolve_code(code)?;
    match out {
        Some(path) => write(path, a.to_text().as_bytes())?,
        None => print!("{}", a.to_text()),
    }
    Ok(())
}

pub fn matrix_load(file: &Path, format: Format) -> CmdResult {
    let a = load_matrix(file)?;
    let s = a.spec();
    let m = a.metrics();
    let rows: Vec<Vec<String>> = (0..a.k())
        .map(|i| (0..a.n()).map(|j| a.entry(i, j).to_string()).collect())
        .collect();
    match format {
        Format::Json => {
            let doc = json!({
                "kind": s.kind.name(),
                "K": s.k,
                "N": s.n,
                "g": format!("0x{}", s.g.to_hex()),
                "x": s.x,
                "rows": rows,
                "l_max": m.l_max,
                "l_sum": m.l_sum,
                "alpha": m.alpha,
                "monomial": a.is_monomial(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Markdown => {
            println!("# {} matrix, K={} N={}\n", s.kind, s.k, s.n);
            let header: String = (1..=a.n()).map(|j| format!(" c{j} |")).collect();
            println!("|{header}");
            println!("|{}", "---|".repeat(a.n()));
            for row in &rows {
                println!("| {} |", row.join(" | "));
            }
            println!("\n{m}");
        }
    }
    Ok(())
}
