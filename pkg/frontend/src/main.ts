import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(location.search);
const base = params.get("api") ?? `${location.protocol}//${location.hostname}:8731`;

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

new App(root, new ApiClient(base, (url, init) => fetch(url, init)));
