// three.js point-cloud renderer for the full state space. All 181,440 nodes
// are drawn as one Points batch with per-vertex colors; edges are drawn only
// around the selected node unless the user explicitly enables the full set.

import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";
import type { ViewState } from "./viewState";

const COLORS = {
    default: new THREE.Color(0x343a46),
    frontier: new THREE.Color(0xffa827), // warm, bright
    visited: new THREE.Color(0x3f7fbf), // cool, mid luminance
    path: new THREE.Color(0xff4fd8), // saturated accent
    selected: new THREE.Color(0xffffff),
    goal: new THREE.Color(0x3dff6e),
};

export class CloudRenderer {
    private scene = new THREE.Scene();
    private camera: THREE.PerspectiveCamera;
    private renderer: THREE.WebGLRenderer;
    private controls: OrbitControls;
    private points: THREE.Points | null = null;
    private colorAttr: THREE.BufferAttribute | null = null;
    private neighborhoodEdges: THREE.LineSegments | null = null;
    private fullEdges: THREE.LineSegments | null = null;
    private positions: Float32Array | null = null;
    private raycaster = new THREE.Raycaster();
    private focusTarget: THREE.Vector3 | null = null;
    private colorsDirty = false;
    private viewState: ViewState | null = null;

    onPick: ((nodeId: number) => void) | null = null;

    constructor(private canvas: HTMLCanvasElement) {
        this.renderer = new THREE.WebGLRenderer({ canvas, antialias: false });
        this.camera = new THREE.PerspectiveCamera(55, 1, 0.1, 5000);
        this.camera.position.set(0, 0, 260);
        this.controls = new OrbitControls(this.camera, canvas);
        this.controls.enableDamping = true;
        this.scene.background = new THREE.Color(0x0b0d12);
        this.raycaster.params.Points = { threshold: 1.2 };
        this.resize();
        window.addEventListener("resize", () => this.resize());
        canvas.addEventListener("pointerdown", (e) => this.handlePick(e));
        this.renderer.setAnimationLoop(() => this.frame());
    }

    private resize() {
        const w = this.canvas.clientWidth || this.canvas.parentElement?.clientWidth || 800;
        const h = this.canvas.clientHeight || this.canvas.parentElement?.clientHeight || 600;
        this.renderer.setSize(w, h, false);
        this.camera.aspect = w / h;
        this.camera.updateProjectionMatrix();
    }

    setPositions(positions: Float32Array) {
        this.positions = positions;
        const n = positions.length / 3;
        if (this.points) {
            const attr = this.points.geometry.getAttribute("position") as THREE.BufferAttribute;
            (attr.array as Float32Array).set(positions);
            attr.needsUpdate = true;
            this.points.geometry.computeBoundingSphere();
        } else {
            const geometry = new THREE.BufferGeometry();
            geometry.setAttribute("position", new THREE.BufferAttribute(positions.slice(), 3));
            const colors = new Float32Array(n * 3);
            this.colorAttr = new THREE.BufferAttribute(colors, 3);
            geometry.setAttribute("color", this.colorAttr);
            const material = new THREE.PointsMaterial({
                size: 0.9,
                vertexColors: true,
                sizeAttenuation: true,
            });
            this.points = new THREE.Points(geometry, material);
            this.scene.add(this.points);
        }
        this.refreshEdgeOverlays();
        this.colorsDirty = true;
    }

    setViewState(state: ViewState) {
        this.viewState = state;
        this.colorsDirty = true;
        this.refreshEdgeOverlays();
    }

    markDirty() {
        this.colorsDirty = true;
    }

    /** Animate the orbit target toward a node's position. */
    focusNode(nodeId: number) {
        if (!this.positions) return;
        this.focusTarget = new THREE.Vector3(
            this.positions[nodeId * 3],
            this.positions[nodeId * 3 + 1],
            this.positions[nodeId * 3 + 2],
        );
    }

    /** Neighborhood edge overlay around the selected node. */
    setNeighborhood(center: number, neighborIds: number[]) {
        if (this.neighborhoodEdges) {
            this.scene.remove(this.neighborhoodEdges);
            this.neighborhoodEdges.geometry.dispose();
            this.neighborhoodEdges = null;
        }
        if (!this.positions || neighborIds.length === 0) return;
        const verts = new Float32Array(neighborIds.length * 6);
        for (let i = 0; i < neighborIds.length; i++) {
            verts.set(this.positions.subarray(center * 3, center * 3 + 3), i * 6);
            verts.set(this.positions.subarray(neighborIds[i] * 3, neighborIds[i] * 3 + 3), i * 6 + 3);
        }
        const geometry = new THREE.BufferGeometry();
        geometry.setAttribute("position", new THREE.BufferAttribute(verts, 3));
        this.neighborhoodEdges = new THREE.LineSegments(
            geometry,
            new THREE.LineBasicMaterial({ color: 0xdddddd, transparent: true, opacity: 0.8 }),
        );
        this.scene.add(this.neighborhoodEdges);
    }

    /** Full 241,920-edge overlay; heavy, only on explicit request. */
    setFullEdges(edgePairs: Uint32Array | null) {
        if (this.fullEdges) {
            this.scene.remove(this.fullEdges);
            this.fullEdges.geometry.dispose();
            this.fullEdges = null;
        }
        if (!edgePairs || !this.positions) return;
        const verts = new Float32Array(edgePairs.length * 3);
        for (let i = 0; i < edgePairs.length; i++) {
            verts.set(this.positions.subarray(edgePairs[i] * 3, edgePairs[i] * 3 + 3), i * 3);
        }
        const geometry = new THREE.BufferGeometry();
        geometry.setAttribute("position", new THREE.BufferAttribute(verts, 3));
        this.fullEdges = new THREE.LineSegments(
            geometry,
            new THREE.LineBasicMaterial({ color: 0x2a3142, transparent: true, opacity: 0.25 }),
        );
        this.scene.add(this.fullEdges);
    }

    private handlePick(event: PointerEvent) {
        if (!this.points || !this.onPick || event.button !== 0 || !event.shiftKey) return;
        const rect = this.canvas.getBoundingClientRect();
        const ndc = new THREE.Vector2(
            ((event.clientX - rect.left) / rect.width) * 2 - 1,
            -((event.clientY - rect.top) / rect.height) * 2 + 1,
        );
        this.raycaster.setFromCamera(ndc, this.camera);
        const hits = this.raycaster.intersectObject(this.points, false);
        if (hits.length > 0 && hits[0].index !== undefined) {
            this.onPick(hits[0].index);
        }
    }

    private recolor() {
        if (!this.colorAttr || !this.viewState) return;
        const colors = this.colorAttr.array as Float32Array;
        const n = colors.length / 3;
        const base = COLORS.default;
        for (let i = 0; i < n; i++) {
            colors[i * 3] = base.r;
            colors[i * 3 + 1] = base.g;
            colors[i * 3 + 2] = base.b;
        }
        const paint = (id: number, c: THREE.Color) => {
            colors[id * 3] = c.r;
            colors[id * 3 + 1] = c.g;
            colors[id * 3 + 2] = c.b;
        };
        const vs = this.viewState;
        for (const id of vs.visited) paint(id, COLORS.visited);
        for (const id of vs.frontier) paint(id, COLORS.frontier);
        for (const id of vs.path) paint(id, COLORS.path);
        paint(vs.goalId, COLORS.goal);
        if (vs.selected !== null) paint(vs.selected, COLORS.selected);
        this.colorAttr.needsUpdate = true;
    }

    private refreshEdgeOverlays() {
        // overlays are rebuilt by the app layer, which owns edge data
    }

    private frame() {
        if (this.colorsDirty) {
            this.recolor();
            this.colorsDirty = false;
        }
        if (this.focusTarget) {
            this.controls.target.lerp(this.focusTarget, 0.12);
            if (this.controls.target.distanceTo(this.focusTarget) < 0.05) {
                this.focusTarget = null;
            }
        }
        this.controls.update();
        this.renderer.render(this.scene, this.camera);
    }
}
