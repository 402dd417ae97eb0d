import init, { analyze, wilfMap, occurrences, countRows } from './pkg/wilfcheck_web.js';

const $ = (id) => document.getElementById(id);
const SVG = 'http://www.w3.org/2000/svg';

let hits = [];
let hitIndex = 0;

function call(fn, errorBox) {
  try {
    const out = JSON.parse(fn());
    $(errorBox).textContent = '';
    return out;
  } catch (e) {
    $(errorBox).textContent = e.message ?? String(e);
    return null;
  }
}

// Plots (i, values[i]) with records in red and `highlight` (1-based
// positions) in blue; records are joined by a step line.
function drawDiagram(svg, values, records, highlight = []) {
  svg.replaceChildren();
  const n = values.length;
  if (n === 0) return;
  const size = Number(svg.getAttribute('width'));
  const pad = 24;
  const cell = (size - 2 * pad) / n;
  const x = (i) => pad + (i - 0.5) * cell;
  const y = (v) => size - pad - (v - 0.5) * cell;
  const el = (name, attrs) => {
    const e = document.createElementNS(SVG, name);
    for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
    svg.appendChild(e);
    return e;
  };
  for (let k = 0; k <= n; k++) {
    el('line', { x1: pad + k * cell, y1: pad, x2: pad + k * cell, y2: size - pad, stroke: '#eee' });
    el('line', { x1: pad, y1: pad + k * cell, x2: size - pad, y2: pad + k * cell, stroke: '#eee' });
  }
  const recordSet = new Set(records);
  let path = '';
  records.forEach((p, j) => {
    const v = values[p - 1];
    path += `${j === 0 ? 'M' : 'L'}${x(p)},${y(v)} `;
    const next = records[j + 1] ?? n + 1;
    path += `L${x(next) - cell / 2},${y(v)} `;
  });
  el('path', { d: path, fill: 'none', stroke: '#c62828', 'stroke-opacity': 0.35, 'stroke-width': 2 });
  if (highlight.length > 1) {
    const d = highlight.map((p, j) => `${j ? 'L' : 'M'}${x(p)},${y(values[p - 1])}`).join(' ');
    el('path', { d, fill: 'none', stroke: '#1565c0', 'stroke-dasharray': '4 3' });
  }
  const hl = new Set(highlight);
  values.forEach((v, i) => {
    const p = i + 1;
    const cls = hl.has(p) ? 'dot-hit' : recordSet.has(p) ? 'dot-record' : 'dot';
    el('circle', { cx: x(p), cy: y(v), r: Math.max(3, Math.min(8, cell / 4)), class: cls });
    if (n <= 20) {
      const t = el('text', { x: x(p), y: size - 6, 'text-anchor': 'middle', 'font-size': 10, fill: '#888' });
      t.textContent = p;
    }
  });
}

function refresh() {
  const text = $('perm').value;
  const a = call(() => analyze(text), 'perm-error');
  if (!a) return;
  $('spec').textContent = a.spec;
  $('minimal').textContent = a.minimal.join(',');
  $('maximal').textContent = a.maximal.join(',');
  const body = $('classes').tBodies[0];
  body.replaceChildren();
  for (const c of a.classes) {
    const tr = body.insertRow();
    tr.insertCell().textContent = c.class;
    const m = tr.insertCell();
    m.textContent = c.member ? 'yes' : 'no';
    m.className = c.member ? 'yes' : 'no';
    tr.insertCell().textContent = c.witness ? `(${c.witness.join(',')})` : '';
  }
  hits = call(() => occurrences($('pattern').value, text, 500), 'pattern-error') ?? [];
  hitIndex = 0;
  redrawOccurrence(a);
}

function redrawOccurrence(a = call(() => analyze($('perm').value), 'perm-error')) {
  if (!a) return;
  const current = hits.length ? hits[hitIndex] : [];
  $('occ-status').textContent = hits.length
    ? `${hitIndex + 1}/${hits.length}${hits.length === 500 ? '+' : ''}: (${current.join(',')})`
    : 'no occurrences';
  drawDiagram($('diagram'), a.values, a.positions, current);
}

function step(delta) {
  if (!hits.length) return;
  hitIndex = (hitIndex + delta + hits.length) % hits.length;
  redrawOccurrence();
}

function map(inverse) {
  const m = call(() => wilfMap($('perm').value, inverse), 'map-error');
  if (!m) return;
  const [from, to] = inverse ? ['31-4-2-avoiding', 'satisfying'] : ['satisfying', '31-4-2-avoiding'];
  $('map-input').textContent = `${from}: ${m.input.join(',')}`;
  $('map-output').textContent = `${to}: ${m.output.join(',')}`;
  drawDiagram($('map-left'), m.input, m.positions);
  drawDiagram($('map-right'), m.output, m.positions);
}

function shuffled(n) {
  const v = Array.from({ length: n }, (_, i) => i + 1);
  for (let i = n - 1; i > 0; i--) {
    const j = Math.floor(Math.random() * (i + 1));
    [v[i], v[j]] = [v[j], v[i]];
  }
  return v.join(',');
}

// Rejection sampling; both classes are a sizeable fraction of S_n for n <= 12.
function randomMember(className) {
  const n = 6 + Math.floor(Math.random() * 7);
  for (let tries = 0; tries < 10000; tries++) {
    const text = shuffled(n);
    const a = JSON.parse(analyze(text));
    if (a.classes.find((c) => c.class === className).member) return text;
  }
  return $('perm').value;
}

function count() {
  const n = Number($('count-n').value);
  const rows = call(() => countRows(n), 'count-error');
  if (!rows) return;
  const body = $('counts').tBodies[0];
  body.replaceChildren();
  for (const r of rows) {
    const tr = body.insertRow();
    for (const k of ['n', 'satisfying', 'avoiding', 'specs', 'catalan']) tr.insertCell().textContent = r[k];
  }
}

await init();
$('perm').addEventListener('input', refresh);
$('pattern').addEventListener('input', refresh);
$('prev-occ').addEventListener('click', () => step(-1));
$('next-occ').addEventListener('click', () => step(1));
$('random').addEventListener('click', () => { $('perm').value = randomMember('satisfying'); refresh(); map(false); });
$('random-avoiding').addEventListener('click', () => { $('perm').value = randomMember('avoiding3142v'); refresh(); map(true); });
$('map-forward').addEventListener('click', () => map(false));
$('map-inverse').addEventListener('click', () => map(true));
$('count').addEventListener('click', count);
refresh();
map(false);
count();
