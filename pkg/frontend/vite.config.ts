import { defineConfig } from "vite";

export default defineConfig({
    build: {
        outDir: "dist",
        chunkSizeWarningLimit: 1200,
    },
    server: {
        proxy: {
            "/api": "http://127.0.0.1:8080",
        },
    },
});
