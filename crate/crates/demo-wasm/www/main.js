import init, { Explorer, curves } from "./pkg/imoments_wasm.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
const SCALE = 2;

let explorer;

function alphaOf(input) {
  const v = input.value.trim();
  return v === "" ? undefined : Number(v);
}

function show(canvas, picture, maxWidth = 640) {
  const { width, height } = picture;
  canvas.width = width;
  canvas.height = height;
  const scale = Math.max(1, Math.min(SCALE, Math.floor(maxWidth / width)));
  canvas.style.width = `${width * scale}px`;
  canvas.style.height = `${height * scale}px`;
  const data = new ImageData(new Uint8ClampedArray(picture.pixels), width, height);
  canvas.getContext("2d").putImageData(data, 0, 0);
}

function report(el, fn) {
  try {
    el.className = "";
    el.textContent = fn() ?? "";
  } catch (e) {
    el.className = "err";
    el.textContent = String(e);
  }
}

function reconstruct() {
  $("orderv").textContent = $("order").value;
  report($("recinfo"), () => {
    const t0 = performance.now();
    const p = explorer.reconstruct($("family").value, Number($("order").value), alphaOf($("alpha")));
    const ms = performance.now() - t0;
    show($("rec"), p, 320);
    const db = Number.isFinite(p.psnr) ? `${p.psnr.toFixed(2)} dB` : "exact";
    return `PSNR ${db}, ${ms.toFixed(0)} ms`;
  });
}

function plot() {
  report($("cinfo"), () => {
    const n = Number($("cn").value);
    const k = Number($("ck").value);
    const v = curves($("cfamily").value, n, k, alphaOf($("calpha")));
    const c = $("plot");
    const g = c.getContext("2d");
    g.clearRect(0, 0, c.width, c.height);
    let lo = Math.min(...v), hi = Math.max(...v);
    if (hi === lo) { hi += 1; lo -= 1; }
    const x = (i) => 10 + (i / Math.max(1, n - 1)) * (c.width - 20);
    const y = (val) => c.height - 10 - ((val - lo) / (hi - lo)) * (c.height - 20);
    g.strokeStyle = "#bbb";
    g.beginPath(); g.moveTo(10, y(0)); g.lineTo(c.width - 10, y(0)); g.stroke();
    for (let p = 0; p < k; p++) {
      g.strokeStyle = COLORS[p % COLORS.length];
      g.beginPath();
      for (let i = 0; i < n; i++) {
        const val = v[p * n + i];
        i === 0 ? g.moveTo(x(i), y(val)) : g.lineTo(x(i), y(val));
      }
      g.stroke();
    }
    return `orders 0 to ${k - 1} at ${n} points`;
  });
}

function polar() {
  $("resv").textContent = $("res").value;
  report($("pinfo"), () => {
    const p = explorer.polar(Number($("res").value));
    show($("polar"), p, 900);
    return `${p.height} radii by ${p.width} angles`;
  });
}

function refresh() {
  show($("src"), explorer.source(), 320);
  reconstruct();
  polar();
}

async function loadFile(file) {
  const bitmap = await createImageBitmap(file);
  const s = Math.min(1, 256 / Math.max(bitmap.width, bitmap.height));
  const w = Math.max(1, Math.round(bitmap.width * s));
  const h = Math.max(1, Math.round(bitmap.height * s));
  const c = new OffscreenCanvas(w, h);
  const g = c.getContext("2d");
  g.drawImage(bitmap, 0, 0, w, h);
  explorer.load_rgba(w, h, new Uint8Array(g.getImageData(0, 0, w, h).data.buffer));
  refresh();
}

await init();
explorer = new Explorer(128);
for (const id of ["family", "order", "alpha"]) $(id).addEventListener("input", reconstruct);
for (const id of ["cfamily", "cn", "ck", "calpha"]) $(id).addEventListener("input", plot);
$("res").addEventListener("input", polar);
$("file").addEventListener("change", (e) => e.target.files[0] && loadFile(e.target.files[0]).catch((err) => report($("recinfo"), () => { throw err; })));
$("reset").addEventListener("click", () => { explorer = new Explorer(128); refresh(); });
refresh();
plot();
