import init, { card_json, compare_json, profile_json } from "./pkg/canyonlab_wasm.js";

const $ = (id) => document.getElementById(id);

// "p/q" -> number, for plotting only
function num(s) {
  const [p, q] = s.split("/");
  return q === undefined ? Number(p) : Number(p) / Number(q);
}

function showError(el, err) {
  el.className = "error";
  try {
    el.textContent = JSON.parse(err).message;
  } catch {
    el.textContent = String(err);
  }
}

function runCard() {
  const out = $("card-out");
  const summary = $("card-summary");
  out.className = "";
  try {
    const text = card_json($("card-expr").value, $("card-binds").value);
    const card = JSON.parse(text);
    const rows = card.second_level.map(
      (l) => `pair ${l.pair.join("-")}: H = ${l.H}, diff = ${l.diff.re} + ${l.diff.im}i (rad ${l.diff.rad})`
    );
    summary.className = "";
    summary.innerHTML =
      `<p>${card.canyons.filter((c) => c.in_card).length} card canyons in ${card.clusters.length} clusters; ` +
      `degrees ${[...new Set(card.canyons.filter((c) => c.in_card).map((c) => c.d))].join(", ") || "none"}</p>` +
      (rows.length ? `<p>${rows.join("<br>")}</p>` : "");
    out.textContent = text;
  } catch (e) {
    summary.textContent = "";
    showError(out, e);
  }
}

function runCompare() {
  const out = $("cmp-out");
  const verdict = $("cmp-verdict");
  out.className = "";
  try {
    const text = compare_json($("cmp-f").value, $("cmp-g").value, $("cmp-binds").value, $("cmp-cert").checked);
    const v = JSON.parse(text);
    verdict.className = "verdict";
    verdict.textContent = v.verdict.replace("_", " ") + (v.route ? ` (${v.route.replace("_", " ")})` : "");
    out.textContent = text;
  } catch (e) {
    out.textContent = "";
    showError(verdict, e);
  }
}

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function runProfile() {
  const canvas = $("prof-canvas");
  const legend = $("prof-legend");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let polars;
  try {
    polars = JSON.parse(profile_json($("prof-expr").value, $("prof-binds").value));
  } catch (e) {
    showError(legend, e);
    return;
  }
  legend.className = "";
  if (polars.length === 0) {
    legend.textContent = "no polar arcs";
    return;
  }
  const pts = polars.map((p) => p.profile.samples.map(([q, l]) => [num(q), num(l)]));
  const all = pts.flat();
  const [x0, x1] = [Math.min(...all.map((p) => p[0])), Math.max(...all.map((p) => p[0]))];
  const [y0, y1] = [Math.min(...all.map((p) => p[1])), Math.max(...all.map((p) => p[1]))];
  const pad = 50;
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (canvas.width - 2 * pad);
  const sy = (y) => canvas.height - pad - ((y - y0) / (y1 - y0 || 1)) * (canvas.height - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, canvas.height - pad);
  ctx.lineTo(canvas.width - pad / 2, canvas.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.fillText("q", canvas.width - pad / 2 - 10, canvas.height - pad + 20);
  ctx.fillText("λ(q)", 5, pad / 2);
  ctx.fillText(x0.toFixed(2), sx(x0) - 10, canvas.height - pad + 15);
  ctx.fillText(x1.toFixed(2), sx(x1) - 10, canvas.height - pad + 15);
  ctx.fillText(y0.toFixed(2), 5, sy(y0));
  ctx.fillText(y1.toFixed(2), 5, sy(y1) + 10);

  const items = [];
  polars.forEach((p, k) => {
    const color = COLORS[k % COLORS.length];
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.setLineDash(k % 2 ? [6, 4] : []);
    ctx.beginPath();
    pts[k].forEach(([x, y], n) => (n ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
    const d = num(p.profile.d);
    ctx.setLineDash([2, 3]);
    ctx.beginPath();
    ctx.moveTo(sx(d), pad / 2);
    ctx.lineTo(sx(d), canvas.height - pad);
    ctx.stroke();
    items.push(`<span style="color:${color}">&#9632;</span> ${p.arc}: d = ${p.profile.d}, ` +
      `λ∞ = ${p.profile.lambda_inf}${p.in_card ? "" : " (not in card)"}`);
  });
  ctx.setLineDash([]);
  legend.innerHTML = items.join("<br>");
}

await init();
$("card-run").addEventListener("click", runCard);
$("cmp-run").addEventListener("click", runCompare);
$("prof-run").addEventListener("click", runProfile);
