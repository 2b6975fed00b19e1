import init, { serial_table, evaluate, contraction_curve } from "./pkg/qset_web.js";

const $ = (id) => document.getElementById(id);

function showTable() {
  $("table-error").textContent = "";
  try {
    const rows = JSON.parse(serial_table(Number($("from").value), Number($("to").value)));
    const head = "<tr><th>serial</th><th>rank</th><th>grade</th><th>set</th></tr>";
    $("table").innerHTML = head + rows
      .map((r) => `<tr><td>${r.serial}</td><td>${r.rank}</td><td>${r.grade}</td><td>${r.set}</td></tr>`)
      .join("");
  } catch (e) {
    $("table-error").textContent = e;
  }
}

function showResult() {
  const out = $("result");
  out.classList.remove("error");
  try {
    const r = JSON.parse(evaluate($("expr").value));
    out.textContent = [
      `canonical  ${r.canonical}`,
      `rank       ${r.rank}`,
      `terms      ${r.terms}  (serials ${r.serials.join(", ")})`,
      `grade op   ${r.grade}`,
      `iota       ${r.iota}`,
      `json       ${r.json}`,
    ].join("\n");
  } catch (e) {
    out.classList.add("error");
    out.textContent = e;
  }
}

function plot() {
  $("plot-error").textContent = "";
  const k = Number($("k").value);
  let data;
  try {
    data = contraction_curve(k, Number($("jmax").value));
  } catch (e) {
    $("plot-error").textContent = e;
    return;
  }
  const canvas = $("canvas");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  if (data.length === 0) return;

  const js = [], rs = [];
  for (let i = 0; i < data.length; i += 2) { js.push(data[i]); rs.push(data[i + 1]); }
  const jMax = js[js.length - 1], jMin = js[0];
  const rMax = Math.max(...rs, 1e-9);
  const x = (j) => pad + ((j - jMin) / Math.max(jMax - jMin, 1)) * (w - 2 * pad);
  const y = (r) => h - pad - (r / rMax) * (h - 2 * pad);

  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.moveTo(pad, pad); ctx.lineTo(pad, h - pad); ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.fillText(rMax.toPrecision(3), 4, pad);
  ctx.fillText("0", pad - 12, h - pad);
  ctx.fillText(`j = ${jMin}`, pad, h - pad + 16);
  ctx.fillText(`j = ${jMax}`, w - pad - 40, h - pad + 16);

  ctx.strokeStyle = "#1f77b4";
  ctx.beginPath();
  js.forEach((j, i) => {
    const px = x(j), py = y(k / j);
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  });
  ctx.stroke();

  ctx.fillStyle = "#d62728";
  js.forEach((j, i) => ctx.fillRect(x(j) - 2, y(rs[i]) - 2, 4, 4));
}

await init();
$("show").onclick = showTable;
$("eval").onclick = showResult;
$("plot").onclick = plot;
$("expr").addEventListener("keydown", (e) => { if (e.key === "Enter") showResult(); });
showTable();
showResult();
plot();
