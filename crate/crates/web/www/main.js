import init, { build_code, classify, erasure_round_trip } from "./pkg/sxor_web.js";

const $ = (id) => document.getElementById(id);

function params() {
  return {
    kind: $("kind").value,
    k: Number($("k").value),
    n: Number($("n").value),
    g: $("g").value,
    x: $("x").value,
  };
}

function esc(s) {
  return String(s).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function call(target, f) {
  try {
    target.innerHTML = f();
  } catch (e) {
    target.innerHTML = `<p class="error">${esc(e)}</p>`;
  }
}

function matrixTable(doc) {
  const head = doc.rows[0].map((_, j) => `<th>c${j + 1}</th>`).join("");
  const body = doc.rows.map((r) => `<tr>${r.map((e) => `<td>${esc(e)}</td>`).join("")}</tr>`).join("");
  const over = doc.overheads.map((l) => `<td>${l}</td>`).join("");
  return `<table><tr>${head}</tr>${body}<tr>${over}</tr></table>`;
}

function showCode() {
  const p = params();
  const doc = JSON.parse(build_code(p.kind, p.k, p.n, p.g, p.x));
  const check = doc.suboptimal
    ? `every ${doc.K} columns invertible (${doc.minors_checked} minors)`
    : `singular column sets: ${doc.singular.map((s) => s.join(",")).join("; ")}`;
  return `${matrixTable(doc)}
    <p>last row: per-packet overhead. l_max=${doc.l_max}, l_sum=${doc.l_sum}, alpha=${doc.alpha}. ${check}</p>`;
}

function showClasses() {
  const p = params();
  const [doc] = JSON.parse(classify(p.k, p.n, p.g));
  const rows = doc.classes
    .map((c) => `<tr><td>(${c.rep.join(",")})</td><td>${c.size}</td><td>${c.l_max}</td><td>${c.l_sum}</td><td>${c.alpha}</td></tr>`)
    .join("");
  return `<table><tr><th>representative</th><th>size</th><th>l_max</th><th>l_sum</th><th>alpha</th></tr>${rows}</table>
    <p>best: (${doc.best.rep.join(",")})</p>`;
}

function showRun() {
  const p = params();
  const doc = JSON.parse(erasure_round_trip(p.kind, p.k, p.n, p.g, p.x, $("msg").value, $("erase").value, $("decoder").value));
  const packets = doc.packets
    .map((pk) => {
      const cls = pk.erased ? "erased" : doc.used.includes(pk.index) ? "used" : "";
      return `<tr><td class="${cls}">c${pk.index}</td><td class="bits ${cls}">${pk.bits}</td></tr>`;
    })
    .join("");
  let detail = "";
  if (doc.det !== undefined) {
    detail = `<p>det = ${esc(doc.det)}: shift ${doc.shift}, then divide by ${esc(doc.filter)}</p>`;
  } else {
    const steps = doc.trace.map((s) => `s${s.source}[${s.bit}] from c${s.packet} @${s.position}`).join("\n");
    detail = `<p>zigzag resolved ${doc.steps} bits; first steps:</p><pre>${steps}</pre>`;
  }
  return `<table>${packets}</table>
    <p>decoded from packets ${doc.used.join(", ")}: <b>${esc(doc.decoded)}</b> ${doc.ok ? "(matches)" : "(MISMATCH)"}</p>${detail}`;
}

await init();
$("build").onclick = () => call($("code-out"), showCode);
$("classify").onclick = () => call($("code-out"), showClasses);
$("run").onclick = () => call($("run-out"), showRun);
$("kind").onchange = () => {
  if ($("kind").value === "zd3") {
    $("k").value = 3;
    $("n").value = 6;
  }
};
call($("code-out"), showCode);
