import { NavigatorApi } from "./api.js";
import { NavigatorApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");
void new NavigatorApp(root, new NavigatorApi()).start();
