import { defineConfig } from "vite";

// base "./" lets the bundle be served from /app/ by the API process
export default defineConfig({
  base: "./",
  build: { outDir: "dist", emptyOutDir: true },
  server: {
    proxy: {
      "^/(lipshapes|words|speakers|videos|sessions|overlay|metrics).*": {
        target: "http://127.0.0.1:8077",
        changeOrigin: true,
      },
    },
  },
});
