import { ApiClient } from "./api.js";
import { Controller } from "./controller.js";
import { render } from "./render.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "http://127.0.0.1:8642";
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  const picker = document.getElementById("picker") as HTMLSelectElement;
  const openBtn = document.getElementById("open") as HTMLButtonElement;
  const nuBtn = document.getElementById("load-nus") as HTMLButtonElement;
  if (!root || !picker || !openBtn || !nuBtn) throw new Error("missing page scaffold");

  const api = new ApiClient(apiBase());
  const ctl = new Controller(api, (state) => render(root, state, ctl));

  const rows = await api.catalog();
  for (const row of rows) {
    const opt = document.createElement("option");
    opt.value = row.name;
    opt.textContent = `${row.name} (${row.n} vertices)`;
    picker.appendChild(opt);
  }
  picker.value = "A2";

  openBtn.onclick = () => void ctl.openCatalogSession(picker.value);
  nuBtn.onclick = () => void ctl.loadNuCandidates();
  await ctl.openCatalogSession(picker.value);
}

void boot().catch((err) => {
  const root = document.getElementById("app");
  if (root) root.textContent = `failed to reach the service: ${String(err)}`;
});
