import { runFigureCli } from "./common.js";

runFigureCli("lambda");
