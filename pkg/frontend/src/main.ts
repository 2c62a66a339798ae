// Entry point: exported bundles carry inline bootstrap data and run the
// core in-process; otherwise the viewer talks to the local session API.

import { HttpBackend, InProcessBackend } from "./core/backend.js";
import { readBootstrapData } from "./core/index.js";
import { App } from "./viewer/app.js";

export function start(doc: Document = document): App {
  const host = doc.getElementById("app") ?? doc.body;
  const bootstrap = readBootstrapData(doc);
  const backend = bootstrap
    ? new InProcessBackend(bootstrap.document)
    : new HttpBackend("");
  const app = new App(doc, host, backend);
  void app.boot();
  return app;
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => start());
  } else {
    start();
  }
}
