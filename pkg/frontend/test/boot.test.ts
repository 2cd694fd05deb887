// @vitest-environment happy-dom
import { readFileSync } from "node:fs";
import { beforeEach, describe, expect, it, vi } from "vitest";

import { boot } from "../src/main";

const simText = readFileSync("test/fixtures/sim-5x5-radviz3d.json", "utf-8");

const PAGE_BODY = `
  <header><h1>Radial visualization</h1><span class="meta" id="meta"></span></header>
  <div id="error-banner" style="display:none"></div>
  <input type="file" id="file-picker" style="display:none">
  <main>
    <div id="stage">
      <canvas id="view" width="900" height="700"></canvas>
      <div id="tooltip"></div>
    </div>
    <aside>
      <div class="panel controls" id="controls">
        <button id="snapshot">Save PNG</button>
        <label><input type="checkbox" id="autorotate"> auto-rotate</label>
        <button id="reset">Reset view</button>
        <button id="reset-order">Reset order</button>
      </div>
      <div class="panel"><div id="legend"></div></div>
      <div class="panel"><div id="anchors"></div></div>
      <div class="panel" id="heatmap-panel" style="display:none"><div id="heatmap"></div></div>
    </aside>
  </main>
`;

function mountPage(sceneText: string): void {
  document.body.innerHTML = PAGE_BODY;
  const block = document.createElement("script");
  block.id = "scene-data";
  block.type = "application/json";
  block.textContent = sceneText;
  document.body.appendChild(block);
}

beforeEach(() => {
  // happy-dom has no 2D raster backend; a no-op recording context is enough
  // for wiring tests (drawing output is covered by the projection tests).
  const noop = new Proxy(
    {},
    {
      get: () => () => undefined,
      set: () => true,
    },
  );
  vi.spyOn(HTMLCanvasElement.prototype, "getContext").mockReturnValue(
    noop as unknown as CanvasRenderingContext2D,
  );
});

describe("boot with an embedded scene", () => {
  it("builds the legend, anchor list and metadata", () => {
    mountPage(simText);
    boot();
    expect(document.querySelectorAll("#legend .legend-row").length).toBe(5);
    expect(document.querySelectorAll("#anchors .anchor-row").length).toBe(5);
    expect(document.getElementById("meta")!.textContent).toContain("radviz3d");
    expect(document.getElementById("meta")!.textContent).toContain("500 rows");
    expect((document.getElementById("error-banner") as HTMLElement).style.display).toBe("none");
  });

  it("shows the heatmap panel exactly when the scene carries overlap data", () => {
    mountPage(simText);
    boot();
    const panel = document.getElementById("heatmap-panel") as HTMLElement;
    expect(panel.style.display).not.toBe("none");
    expect(document.querySelectorAll("#heatmap tr").length).toBe(10);
  });

  it("keeps the heatmap panel hidden without overlap data", () => {
    const raw = JSON.parse(simText);
    raw.overlap = null;
    mountPage(JSON.stringify(raw));
    boot();
    expect((document.getElementById("heatmap-panel") as HTMLElement).style.display).toBe("none");
  });

  it("toggles a class from the legend", () => {
    mountPage(simText);
    boot();
    const first = document.querySelector("#legend .legend-row") as HTMLElement;
    first.click();
    expect(first.classList.contains("off")).toBe(true);
    first.click();
    expect(first.classList.contains("off")).toBe(false);
  });

  it("relabels anchor slots after a swap", () => {
    mountPage(simText);
    boot();
    const rows = document.querySelectorAll("#anchors .anchor-row");
    const before = rows[0].querySelector(".name")!.textContent;
    (rows[0].querySelectorAll("button")[1] as HTMLButtonElement).click(); // move down
    const after = document.querySelectorAll("#anchors .anchor-row")[0].querySelector(".name")!.textContent;
    expect(after).not.toBe(before);
  });
});

describe("boot error handling", () => {
  it("rejects truncated JSON with a visible banner and renders nothing", () => {
    mountPage(simText.slice(0, 4000));
    boot();
    const banner = document.getElementById("error-banner") as HTMLElement;
    expect(banner.style.display).toBe("block");
    expect(banner.textContent).toMatch(/JSON/i);
    expect(document.querySelectorAll("#legend .legend-row").length).toBe(0);
  });

  it("rejects unsupported schema versions with a visible banner", () => {
    const raw = JSON.parse(simText);
    raw.schema_version = 99;
    mountPage(JSON.stringify(raw));
    boot();
    const banner = document.getElementById("error-banner") as HTMLElement;
    expect(banner.style.display).toBe("block");
    expect(banner.textContent).toContain("schema_version");
  });

  it("falls back to the file picker when the placeholder is unreplaced", () => {
    mountPage("{{SCENE_JSON}}");
    boot();
    expect((document.getElementById("file-picker") as HTMLElement).style.display).toBe("block");
  });
});
