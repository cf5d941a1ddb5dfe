/** Browser entry point: mounts the composer and its surrounding controls. */

import { App } from "./app.js";

function el<T extends HTMLElement>(tag: string, text = ""): T {
  const node = document.createElement(tag) as T;
  if (text) node.textContent = text;
  return node;
}

function numberInput(value: number, width = 4): HTMLInputElement {
  const input = el<HTMLInputElement>("input");
  input.type = "number";
  input.value = String(value);
  input.style.width = `${width}em`;
  return input;
}

function mountChrome(chrome: HTMLElement, app: App): void {
  const templates = el<HTMLDivElement>("div");
  for (const [label, name] of [
    ["empty", "empty"],
    ["Grover 0110", "grover"],
    ["teleportation", "teleportation"],
  ] as const) {
    const button = el<HTMLButtonElement>("button", label);
    button.addEventListener("click", () => app.loadTemplate(name));
    templates.appendChild(button);
  }

  const registers = el<HTMLDivElement>("div");
  const qubits = numberInput(1);
  const cbits = numberInput(0);
  const applySize = el<HTMLButtonElement>("button", "resize");
  applySize.addEventListener("click", () =>
    app.resize(Number(qubits.value), Number(cbits.value)));
  registers.append(el("span", "qubits"), qubits, el("span", "cbits"), cbits, applySize);

  const runControls = el<HTMLDivElement>("div");
  const seed = numberInput(0, 8);
  const shots = numberInput(1, 6);
  const rerun = el<HTMLButtonElement>("button", "re-run");
  rerun.addEventListener("click", () => {
    app.state.seed = Number(seed.value);
    app.state.shots = Number(shots.value);
    app.scheduleRun();
  });
  runControls.append(el("span", "seed"), seed, el("span", "shots"), shots, rerun);

  const repeat = el<HTMLDivElement>("div");
  const start = numberInput(0);
  const end = numberInput(0);
  const count = numberInput(2);
  const wrap = el<HTMLButtonElement>("button", "wrap in repeat");
  wrap.addEventListener("click", () =>
    app.wrapColumnsInRepeat(Number(start.value), Number(end.value), Number(count.value)));
  repeat.append(el("span", "columns"), start, el("span", "to"), end,
                el("span", "count"), count, wrap);

  const files = el<HTMLDivElement>("div");
  const save = el<HTMLButtonElement>("button", "save");
  save.addEventListener("click", () => {
    const text = JSON.stringify(app.exportDocument(), null, 2) + "\n";
    const url = URL.createObjectURL(new Blob([text], { type: "application/json" }));
    const a = el<HTMLAnchorElement>("a");
    a.href = url;
    a.download = `${app.state.grid.name ?? "circuit"}.json`;
    a.click();
    URL.revokeObjectURL(url);
  });
  const load = el<HTMLInputElement>("input");
  load.type = "file";
  load.accept = ".json,application/json";
  load.addEventListener("change", async () => {
    const file = load.files?.[0];
    if (!file) return;
    try {
      app.loadDocument(JSON.parse(await file.text()));
    } catch (err) {
      app.setNotice(`load failed: ${(err as Error).message}`);
    }
    load.value = "";
  });
  files.append(save, load);

  chrome.append(templates, registers, runControls, repeat, files);
}

const chrome = document.getElementById("chrome");
const root = document.getElementById("app");
if (chrome && root) {
  const app = new App(root);
  void app.loadPalette();
  mountChrome(chrome, app);
}
