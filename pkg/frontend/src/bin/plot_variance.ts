import { runFigureCli } from "./common.js";

runFigureCli("variance");
