import { runFigureCli } from "./common.js";

runFigureCli("gate-scaling");
