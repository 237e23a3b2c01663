import init, * as td from "./pkg/trigdiff_wasm.js";

const $ = (id) => document.getElementById(id);
const POINTS = 800;

function frame(canvas, xs, series, { logY = false } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => Array.from(s.y)).filter(Number.isFinite);
  const f = logY ? (v) => Math.log10(Math.max(v, 1e-300)) : (v) => v;
  let lo = Math.min(...ys.map(f));
  let hi = Math.max(...ys.map(f));
  if (hi - lo < 1e-12) { lo -= 1; hi += 1; }
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((f(y) - lo) / (hi - lo)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "11px monospace";
  const fmt = (v) => (logY ? `1e${v.toFixed(1)}` : v.toPrecision(3));
  ctx.fillText(fmt(hi), 2, pad + 4);
  ctx.fillText(fmt(lo), 2, h - pad);
  ctx.fillText(String(+x0.toFixed(2)), pad, h - pad + 14);
  ctx.fillText(String(+x1.toFixed(2)), w - pad - 20, h - pad + 14);

  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    xs.forEach((x, i) => {
      const y = s.y[i];
      if (!Number.isFinite(y)) return;
      i === 0 ? ctx.moveTo(px(x), py(y)) : ctx.lineTo(px(x), py(y));
    });
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, w - pad - 120, pad + 14 + 14 * k);
  });
}

function params() {
  const delta = 10 ** +$("delta").value;
  const deltaI = $("use-delta-i").checked ? 10 ** +$("delta-i").value : 0;
  $("delta-out").textContent = delta.toExponential(2);
  $("delta-i-out").textContent = deltaI.toExponential(2);
  $("n-out").textContent = $("n").value;
  return { id: $("example").value, delta, deltaI, freq: +$("freq").value, n: +$("n").value };
}

function report(el, f) {
  try {
    f();
  } catch (e) {
    el.textContent = `error: ${e.message ?? e}`;
  }
}

function drawReconstruction() {
  const { id, delta, deltaI, freq, n } = params();
  report($("recon-out"), () => {
    const r = td.reconstruct(id, delta, deltaI, n, freq, POINTS);
    frame($("recon"), Array.from(r.t), [
      { y: r.exact, color: "#222", label: "exact derivative" },
      { y: r.phi, color: "#d33", label: `n = ${r.n}` },
    ]);
    $("recon-out").textContent =
      `relative error ${r.r.toExponential(4)}   a priori bound (relative) ${r.bound.toExponential(4)}`;
    r.free();
  });
}

function drawSweep() {
  const { id, delta, deltaI, freq } = params();
  const nmax = Math.max(2, +$("nmax").value);
  report($("sweep-out"), () => {
    const errs = td.error_sweep(id, delta, deltaI, freq, nmax);
    const ns = Array.from({ length: nmax }, (_, i) => i + 1);
    frame($("sweep"), ns, [{ y: errs, color: "#36c", label: "relative error" }], { logY: true });
    let best = 0;
    errs.forEach((v, i) => { if (v < errs[best]) best = i; });
    $("sweep-out").textContent = `smallest error ${errs[best].toExponential(4)} at n = ${best + 1}`;
  });
}

function drawDivergence() {
  const p = +$("div-p").value;
  const norms = td.divergence(p, 1.0, 120);
  const ns = Array.from({ length: norms.length }, (_, i) => i + 1);
  frame($("diverge"), ns, [{ y: norms, color: "#393", label: "solution norm" }]);
}

function onExample() {
  const id = $("example").value;
  $("description").textContent = `order ${td.example_order(id)}: ${td.example_description(id)}`;
  $("freq").value = id.startsWith("ex8_1") ? 12 : 8;
  refresh();
}

function refresh() {
  drawReconstruction();
  drawSweep();
}

await init();
for (const id of td.example_ids()) {
  $("example").add(new Option(id, id, id === "ex8_2", id === "ex8_2"));
}
$("example").addEventListener("change", onExample);
for (const id of ["delta", "delta-i", "use-delta-i", "freq", "nmax"]) {
  $(id).addEventListener("input", refresh);
}
$("n").addEventListener("input", drawReconstruction);
$("suggest").addEventListener("click", () => {
  const { id, delta, deltaI } = params();
  report($("recon-out"), () => {
    $("n").value = td.suggest_degree(id, delta, deltaI);
    drawReconstruction();
  });
});
$("div-p").addEventListener("change", drawDivergence);
onExample();
drawDivergence();
