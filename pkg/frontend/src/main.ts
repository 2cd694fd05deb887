/**
 * Viewer bootstrap: read the embedded scene block (or offer a file picker
 * when the page ships without one), build the panels and wire interaction.
 */

import { parseScene, SchemaError, sceneClasses, zeroSumRows, type Scene } from "./scene";
import { ViewState, defaultCamera } from "./state";
import { Renderer } from "./render";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function showError(message: string): void {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.style.display = "block";
}

function start(scene: Scene): void {
  const state = new ViewState(scene);
  const renderer = new Renderer(el<HTMLCanvasElement>("view"));
  const zeroRows = zeroSumRows(scene);
  const redraw = () => renderer.draw(scene, state);

  el<HTMLSpanElement>("meta").textContent =
    `${scene.method} · ${scene.points.length} rows · ${scene.feature_names.length} features`;

  // Legend with class toggles.
  const legend = el<HTMLDivElement>("legend");
  legend.innerHTML = "";
  for (const cls of sceneClasses(scene)) {
    const row = document.createElement("div");
    row.className = "legend-row";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = scene.class_palette[cls];
    const label = document.createElement("span");
    label.textContent = cls;
    row.append(swatch, label);
    row.addEventListener("click", () => {
      state.toggleClass(cls);
      row.classList.toggle("off", !state.visibleClasses.has(cls));
      redraw();
    });
    legend.appendChild(row);
  }

  // Anchor order panel: feature -> anchor slot, with swap buttons.
  const anchorsPanel = el<HTMLDivElement>("anchors");
  const renderAnchorList = () => {
    anchorsPanel.innerHTML = "";
    state.anchorOrder.forEach((slot, pos) => {
      const row = document.createElement("div");
      row.className = "anchor-row";
      const name = document.createElement("span");
      name.className = "name";
      name.textContent = `${scene.feature_names[pos]} → a${slot + 1}`;
      const up = document.createElement("button");
      up.textContent = "▲";
      up.addEventListener("click", () => {
        state.swapAnchors(pos, pos - 1);
        renderAnchorList();
        redraw();
      });
      const down = document.createElement("button");
      down.textContent = "▼";
      down.addEventListener("click", () => {
        state.swapAnchors(pos, pos + 1);
        renderAnchorList();
        redraw();
      });
      row.append(name, up, down);
      anchorsPanel.appendChild(row);
    });
  };
  renderAnchorList();
  el<HTMLButtonElement>("reset-order").addEventListener("click", () => {
    state.resetAnchorOrder();
    renderAnchorList();
    redraw();
  });

  // Overlap heatmap (only when the scene carries the table).
  if (scene.overlap) {
    el<HTMLDivElement>("heatmap-panel").style.display = "";
    const table = document.createElement("table");
    for (const r of scene.overlap.rows) {
      const tr = document.createElement("tr");
      const th = document.createElement("th");
      th.textContent = `${r.class_i} / ${r.class_j}`;
      const td = document.createElement("td");
      const shade = Math.round(255 - 160 * r.color_value);
      td.style.background = `rgb(255, ${shade}, ${shade})`;
      td.textContent = r.omega.toPrecision(3);
      tr.append(th, td);
      table.appendChild(tr);
    }
    el<HTMLDivElement>("heatmap").appendChild(table);
  }

  // Orbit, zoom, hover.
  const canvas = el<HTMLCanvasElement>("view");
  const tooltip = el<HTMLDivElement>("tooltip");
  let dragging = false;
  let last: [number, number] = [0, 0];
  canvas.addEventListener("mousedown", (e) => {
    dragging = true;
    last = [e.clientX, e.clientY];
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  canvas.addEventListener("mousemove", (e) => {
    if (dragging) {
      state.camera.yaw += (e.clientX - last[0]) * 0.008;
      state.camera.pitch = Math.max(-1.5, Math.min(1.5, state.camera.pitch + (e.clientY - last[1]) * 0.008));
      last = [e.clientX, e.clientY];
      redraw();
      return;
    }
    const rect = canvas.getBoundingClientRect();
    const mx = ((e.clientX - rect.left) * canvas.width) / rect.width;
    const my = ((e.clientY - rect.top) * canvas.height) / rect.height;
    const hit = renderer.hitTest(mx, my);
    if (!hit) {
      tooltip.style.display = "none";
      state.hoveredRow = null;
      return;
    }
    state.hoveredRow = scene.row_ids[hit.row];
    let html = `<b>${scene.row_ids[hit.row]}</b> · ${scene.labels[hit.row]}`;
    if (zeroRows.has(hit.row)) html += ' <span class="flag">zero-sum row</span>';
    for (let j = 0; j < scene.feature_names.length; j++) {
      const value = scene.normalized_matrix[hit.row][j];
      html += `<div class="bar-name">${scene.feature_names[j]} ${value.toFixed(3)}</div>` +
        `<div class="bar" style="width:${Math.round(100 * value)}%"></div>`;
    }
    tooltip.innerHTML = html;
    tooltip.style.display = "block";
    tooltip.style.left = `${e.clientX - rect.left + 14}px`;
    tooltip.style.top = `${e.clientY - rect.top + 14}px`;
  });
  canvas.addEventListener(
    "wheel",
    (e) => {
      e.preventDefault();
      state.camera.zoom = Math.max(0.3, Math.min(6, state.camera.zoom * (e.deltaY < 0 ? 1.1 : 0.9)));
      redraw();
    },
    { passive: false },
  );

  el<HTMLButtonElement>("snapshot").addEventListener("click", () => {
    const a = document.createElement("a");
    a.download = "scene.png";
    a.href = renderer.snapshot();
    a.click();
  });
  el<HTMLButtonElement>("reset").addEventListener("click", () => {
    state.camera = defaultCamera(scene);
    redraw();
  });
  const auto = el<HTMLInputElement>("autorotate");
  window.setInterval(() => {
    if (auto.checked) {
      state.camera.yaw += 0.01;
      redraw();
    }
  }, 40);

  redraw();
}

export function boot(): void {
  const block = document.getElementById("scene-data");
  const text = block?.textContent?.trim() ?? "";
  if (block && text && !text.startsWith("{{")) {
    try {
      start(parseScene(text));
    } catch (err) {
      showError(err instanceof SchemaError ? err.message : `failed to load scene: ${String(err)}`);
    }
    return;
  }
  // No embedded scene: offer a picker.
  const picker = el<HTMLInputElement>("file-picker");
  picker.style.display = "block";
  picker.addEventListener("change", async () => {
    const file = picker.files?.[0];
    if (!file) return;
    try {
      start(parseScene(await file.text()));
      picker.style.display = "none";
    } catch (err) {
      showError(err instanceof SchemaError ? err.message : String(err));
    }
  });
}

// Auto-boot in the browser only; tests drive boot() themselves.
if (typeof document !== "undefined" && typeof process === "undefined") {
  if (document.readyState === "loading") document.addEventListener("DOMContentLoaded", boot);
  else boot();
}
