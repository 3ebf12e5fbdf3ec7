import { StudyApi } from "./api.js";
import { StudyApp } from "./app.js";

function backendBase(): string {
  const override = new URLSearchParams(window.location.search).get("backend");
  if (override) return override.replace(/\/$/, "");
  return window.location.origin;
}

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
const app = new StudyApp(root, new StudyApi(backendBase()), window.sessionStorage);
void app.start();
