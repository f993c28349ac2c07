import init, { grid, cases, generate, verify } from "./pkg/freecurve_wasm.js";

const CHECKS = ["syzygy", "curl", "route", "squarefree", "support", "freeness", "tjurina", "qh", "bc"];
const $ = (id) => document.getElementById(id);

function fail(target, e) {
  target.innerHTML = "";
  const span = document.createElement("span");
  span.className = "err";
  span.textContent = String(e.message ?? e);
  target.appendChild(span);
}

// (i, j, k) with i + j + k = n, drawn with (n,0,0) at the top
function place(p, n) {
  const [i, j] = p;
  const s = 480 / n;
  return [240 + (j - (n - i - j)) * s / 2 + 10, (n - i) * s * 0.866 + 10];
}

function drawGrid() {
  const n = Number($("grid-n").value);
  const svg = $("grid-svg");
  svg.innerHTML = "";
  let data;
  try {
    data = JSON.parse(grid(n));
  } catch (e) {
    return fail($("grid-counts"), e);
  }
  $("grid-counts").textContent =
    `${data.maximal_segments} maximal segments, ${data.components} components, ` +
    `|H_red| = ${data.hred.total} (${data.hred.per_pair} per pair)`;
  const ns = "http://www.w3.org/2000/svg";
  for (const s of data.segments) {
    const [x1, y1] = place(s.from, n);
    const [x2, y2] = place(s.to, n);
    const line = document.createElementNS(ns, "line");
    Object.entries({ x1, y1, x2, y2, class: "seg" }).forEach(([k, v]) => line.setAttribute(k, v));
    line.addEventListener("mouseenter", () => {
      const abc = s.abc ? `(${s.abc.join(", ")})` : "none (line through (n,0,0))";
      $("grid-hover").textContent = `${s.from} to ${s.to}, ${s.points} points, abc = ${abc}`;
    });
    svg.appendChild(line);
  }
  for (let i = 0; i <= n; i++) {
    for (let j = 0; j <= n - i; j++) {
      const [cx, cy] = place([i, j], n);
      const c = document.createElementNS(ns, "circle");
      Object.entries({ cx, cy, r: n > 20 ? 1.5 : 3 }).forEach(([k, v]) => c.setAttribute(k, v));
      svg.appendChild(c);
    }
  }
}

function fillCases() {
  const sel = $("gen-case");
  sel.innerHTML = "";
  try {
    for (const c of JSON.parse(cases(Number($("gen-n").value)))) {
      const o = document.createElement("option");
      o.value = `${c.row}:${c.i}`;
      o.textContent = `row ${c.row}, i = ${c.i}`;
      sel.appendChild(o);
    }
  } catch (e) {
    fail($("verdict"), e);
  }
}

function runGenerate() {
  const [row, i] = $("gen-case").value.split(":").map(Number);
  try {
    $("cert").value = generate(Number($("gen-n").value), row, i, Number($("gen-seed").value));
    $("verdict").textContent = "";
  } catch (e) {
    fail($("verdict"), e);
  }
}

function runVerify() {
  const picked = CHECKS.filter((c) => $(`chk-${c}`).checked);
  if (picked.length === 0) return fail($("verdict"), "pick at least one check");
  try {
    $("verdict").textContent = verify($("cert").value, picked.join(","));
  } catch (e) {
    fail($("verdict"), e);
  }
}

await init();
for (const c of CHECKS) {
  const label = document.createElement("label");
  label.innerHTML = `<input type="checkbox" id="chk-${c}" checked> ${c}`;
  $("checks").appendChild(label);
}
$("grid-go").addEventListener("click", drawGrid);
$("gen-n").addEventListener("change", fillCases);
$("gen-go").addEventListener("click", runGenerate);
$("verify-go").addEventListener("click", runVerify);
fillCases();
drawGrid();
runGenerate();
