import init, { analyze_instance, matroid_share, verify_3dm } from "./pkg/fairshare_web.js";

const $ = (id) => document.getElementById(id);

const LOWER_BOUND = {
  n: 3,
  goods: ["g1", "g2", "g3", "g4", "g5", "g6"],
  valuations: Array(3).fill({ type: "binary_xos", family: [[0, 1, 2], [3, 4, 5]] }),
};

const PRESETS = {
  k4: [6, { kind: "graphic", vertices: 4, edges: [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] }],
  k3: [3, { kind: "graphic", vertices: 3, edges: [[0, 1], [1, 2], [0, 2]] }],
  uniform: [7, { kind: "uniform", rank: 3 }],
  partition: [6, { kind: "partition", blocks: [[0, 1, 2], [3, 4], [5]], capacities: [2, 1, 1] }],
  linear: [5, { kind: "linear_gf2", columns: ["100", "010", "110", "001", "011"] }],
};

function escape(text) {
  return String(text).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function setName(set, goods) {
  return "{" + set.map((g) => (goods ? goods[g] : g)).join(", ") + "}";
}

function showError(el, result) {
  if (!result.error) return false;
  el.innerHTML = `<p class="error">${escape(result.error.kind)}: ${escape(result.error.message)}</p>`;
  return true;
}

function runInstance() {
  const out = $("instance-out");
  const r = JSON.parse(analyze_instance($("instance-json").value, Number($("instance-agent").value)));
  if (showError(out, r)) return;
  const goods = r.goods;
  const bundles = r.mms.allocation.bundles.map((b) => setName(b, goods)).join(" | ");
  const witness = r.aps.witness
    .map((w) => `<tr><td>${escape(setName(w.set, goods))}</td><td>${w.weight}</td></tr>`)
    .join("");
  const prices = r.aps.prices.map((p, g) => `<td>${escape(goods[g])}: ${p}</td>`).join("");
  let html = `
    <p><b>MMS = ${r.mms.value}</b> via ${escape(bundles)}</p>
    <p><b>APS = ${r.aps.value}</b> (${escape(r.kind)} valuation, ${r.n} agents)</p>
    <table><tr><th>witness set</th><th>weight</th></tr>${witness}</table>
    <table><tr>${prices}</tr></table>`;
  if (r.xos_bound) {
    const a = r.xos_bound.allocation;
    html += `<p>Balanced allocation ${escape(a.bundles.map((b) => setName(b, goods)).join(" | "))},
      leftover ${escape(setName(a.leftover, goods))}; its prices bound APS by
      <b>${r.xos_bound.aps_upper}</b> &le; 2&middot;MMS + 1.</p>`;
  }
  out.innerHTML = html;
}

function loadPreset() {
  const [m, spec] = PRESETS[$("matroid-preset").value];
  $("matroid-m").value = m;
  $("matroid-json").value = JSON.stringify(spec);
  runMatroid();
}

function runMatroid() {
  const n = Number($("matroid-n").value);
  $("matroid-n-label").textContent = n;
  const out = $("matroid-out");
  const r = JSON.parse(matroid_share($("matroid-json").value, Number($("matroid-m").value), n));
  if (showError(out, r)) return;
  const bundles = r.allocation.bundles
    .map((b, i) => `<tr><td>agent ${i}</td><td>${setName(b)}</td><td>${r.values[i]}</td></tr>`)
    .join("");
  out.innerHTML = `
    <p>rank ${r.rank}, union rank of ${n} copies ${r.union_rank};
       <b>share = ${r.share}</b> (MMS = APS)</p>
    <p>disjoint bases of the truncation: ${r.bases.map((b) => setName(b)).join(" ")}</p>
    <table><tr><th></th><th>bundle</th><th>value</th></tr>${bundles}</table>`;
}

function buildTriples() {
  const grid = $("triples");
  for (let t = 0; t < 8; t++) {
    const triple = [(t >> 2) & 1, (t >> 1) & 1, t & 1];
    const label = document.createElement("label");
    label.innerHTML = `<input type="checkbox" data-triple="${triple}"> (${triple.join(", ")})`;
    grid.appendChild(label);
  }
  grid.querySelectorAll("input")[0].checked = true;
  grid.querySelectorAll("input")[7].checked = true;
  grid.addEventListener("change", runReduction);
}

function runReduction() {
  const triples = [...$("triples").querySelectorAll("input:checked")].map((el) =>
    el.dataset.triple.split(",").map(Number),
  );
  const out = $("reduction-out");
  const r = JSON.parse(verify_3dm(JSON.stringify({ m3: 2, triples })));
  if (showError(out, r)) return;
  const matching = r.matching ? r.matching.map((t) => `(${t.join(", ")})`).join(" ") : "none";
  const goods = ["x0", "x1", "y0", "y1", "z0", "z1"];
  const bundles = r.mms_allocation.bundles.map((b) => setName(b, goods)).join(" | ");
  out.innerHTML = `
    <p>perfect matching: ${matching}</p>
    <p><b>MMS = ${r.mms}</b> via ${bundles}; APS = ${r.aps}</p>
    <p>valuation is ${r.submodular ? "submodular" : "not submodular"} with
       ${r.marginal_class} marginals; check ${r.consistent ? "passed" : "failed: " + escape(r.failures.join("; "))}</p>`;
}

await init();
$("instance-json").value = JSON.stringify(LOWER_BOUND, null, 1);
$("instance-run").addEventListener("click", runInstance);
$("instance-example").addEventListener("click", () => {
  $("instance-json").value = JSON.stringify(LOWER_BOUND, null, 1);
  runInstance();
});
$("matroid-preset").addEventListener("change", loadPreset);
for (const id of ["matroid-m", "matroid-n", "matroid-json"]) $(id).addEventListener("input", runMatroid);
buildTriples();
runInstance();
loadPreset();
runReduction();
