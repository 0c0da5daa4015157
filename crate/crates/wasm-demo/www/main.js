import init, { classic_curve, prime_curve, ulam_mask } from "./pkg/prime_lissajous_wasm.js";

const $ = (id) => document.getElementById(id);

function show(plotId, infoId, compute) {
  try {
    const view = compute();
    $(plotId).innerHTML = view.svg;
    $(plotId).firstElementChild.setAttribute("width", "100%");
    $(plotId).firstElementChild.setAttribute("height", "100%");
    $(infoId).textContent = view.summary;
    view.free();
  } catch (err) {
    $(infoId).textContent = String(err);
  }
}

function drawClassic() {
  show("cl-plot", "cl-info", () =>
    classic_curve(Number($("cl-a").value), Number($("cl-b").value), Number($("cl-d").value), 400));
}

function drawPrimes() {
  $("ps-n-val").textContent = $("ps-n").value;
  show("ps-plot", "ps-info", () =>
    prime_curve(Number($("ps-n").value), $("ps-alt").checked, $("ps-warp").value, Number($("ps-exp").value), 400));
}

function drawSpiral() {
  const side = Number($("ul-side").value);
  $("ul-side-val").textContent = side;
  try {
    const mask = ulam_mask(side);
    const canvas = $("ul-plot");
    canvas.width = side;
    canvas.height = side;
    const ctx = canvas.getContext("2d");
    const img = ctx.createImageData(side, side);
    let primes = 0;
    mask.forEach((isPrime, i) => {
      const v = isPrime ? 0 : 255;
      primes += isPrime;
      img.data.set([v, v, v, 255], 4 * i);
    });
    ctx.putImageData(img, 0, 0);
    $("ul-info").textContent = `side=${side} cells=${side * side} primes=${primes}`;
  } catch (err) {
    $("ul-info").textContent = String(err);
  }
}

await init();
for (const id of ["cl-a", "cl-b", "cl-d"]) $(id).addEventListener("input", drawClassic);
for (const id of ["ps-n", "ps-alt", "ps-warp", "ps-exp"]) $(id).addEventListener("input", drawPrimes);
$("ul-side").addEventListener("input", drawSpiral);
drawClassic();
drawPrimes();
drawSpiral();
