import { runFigureCli } from "./common.js";

runFigureCli("order-parameter");
