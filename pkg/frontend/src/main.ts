/** Browser bootstrap: wires the controller, renderers and the cube into
 * the page. Everything interesting lives in the imported modules; this
 * file only touches the DOM. */

import { HttpServiceClient } from "./api.js";
import { Controller } from "./controller.js";
import { DataHbEdron } from "./cube.js";
import { renderFace } from "./render.js";
import { mount } from "./vnode.js";
import { modifierForKeys } from "./querybuild.js";

export function start(root: HTMLElement, baseUrl: string, sid: string): void {
  const client = new HttpServiceClient(baseUrl);
  const controller = new Controller(client);
  const cube = new DataHbEdron();
  const pressed = new Set<string>();

  const scene = document.createElement("div");
  scene.className = "scene";
  root.appendChild(scene);

  function redraw(): void {
    scene.innerHTML = "";
    scene.style.transform = cube.sceneTransform();
    for (const face of controller.faces) {
      const data = {
        session: controller.session ?? undefined,
        facet: face.alpha ? controller.facets.get(face.alpha) : undefined,
        layout: face.alpha ? controller.layouts.get(face.alpha) : undefined,
        history: controller.history,
        detail: controller.detail,
      };
      const node = mount(renderFace(face, data, controller.highlight), document);
      (node as HTMLElement).style.transform = cube.faceTransform(face.index);
      scene.appendChild(node);
    }
  }

  document.addEventListener("keydown", (event) => {
    pressed.add(event.key.toLowerCase());
    if (cube.handleKey(event.key)) {
      redraw();
    }
  });
  document.addEventListener("keyup", (event) => {
    pressed.delete(event.key.toLowerCase());
  });

  scene.addEventListener("click", async (event) => {
    const target = event.target as Element | null;
    const vertexGroup = target?.closest("[data-vertex]");
    const faceEl = target?.closest("[data-face]");
    if (!vertexGroup || !faceEl) {
      const row = target?.closest("[data-ref]");
      if (row) {
        controller.showDetail(row.getAttribute("data-ref")!);
        redraw();
      }
      return;
    }
    const vertex = vertexGroup.getAttribute("data-vertex")!;
    const faceIndex = Number(faceEl.getAttribute("data-face"));
    const modifier = modifierForKeys(pressed);
    if (modifier) {
      await controller.buildQuery(vertex, modifier);
    } else {
      await controller.selectVertices(faceIndex, [vertex]);
    }
    redraw();
  });

  controller.open(sid).then(redraw);
}
