/** Image export: the current canvas as a standalone SVG file, or
 * rasterized to PNG via an offscreen canvas (browser only). */

import { renderSvg } from "./render.js";
import { ViewerState } from "./state.js";

export function svgDocument(state: ViewerState): string {
  return '<?xml version="1.0" encoding="UTF-8"?>\n' + renderSvg(state) + "\n";
}

function download(blob: Blob, filename: string): void {
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

export function downloadSvg(state: ViewerState): void {
  const name = `${state.index.doc.workbook_name}-dataflow.svg`;
  download(new Blob([svgDocument(state)], { type: "image/svg+xml" }), name);
}

export function downloadPng(state: ViewerState, scale = 2): Promise<void> {
  const svg = svgDocument(state);
  const url = URL.createObjectURL(new Blob([svg], { type: "image/svg+xml" }));
  return new Promise((resolve, reject) => {
    const image = new Image();
    image.onload = () => {
      const canvas = document.createElement("canvas");
      canvas.width = image.width * scale;
      canvas.height = image.height * scale;
      const ctx = canvas.getContext("2d");
      if (ctx === null) {
        URL.revokeObjectURL(url);
        reject(new Error("canvas 2d context unavailable"));
        return;
      }
      ctx.fillStyle = "#ffffff";
      ctx.fillRect(0, 0, canvas.width, canvas.height);
      ctx.drawImage(image, 0, 0, canvas.width, canvas.height);
      canvas.toBlob((blob) => {
        URL.revokeObjectURL(url);
        if (blob === null) {
          reject(new Error("PNG encoding failed"));
          return;
        }
        download(blob, `${state.index.doc.workbook_name}-dataflow.png`);
        resolve();
      }, "image/png");
    };
    image.onerror = () => {
      URL.revokeObjectURL(url);
      reject(new Error("SVG rasterization failed"));
    };
    image.src = url;
  });
}
