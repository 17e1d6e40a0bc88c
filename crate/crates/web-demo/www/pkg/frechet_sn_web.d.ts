/* tslint:disable */
/* eslint-disable */

export class CurveView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    k_hat1(): number | undefined;
    k_hat2(): number | undefined;
    /**
     * Split index of the first curve value.
     */
    k_start(): number;
    n(): number;
    /**
     * SN1 curve; degenerate splits are NaN.
     */
    sn1(): Float64Array;
    sn2(): Float64Array;
}

export class NullView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    counts(): Uint32Array;
    /**
     * Right edge of the last bin.
     */
    hi(): number;
    /**
     * Left edge of the first bin.
     */
    lo(): number;
    q90(): number;
    q95(): number;
    q99(): number;
}

export class ProfileView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * NaN when the self-normalizer vanishes.
     */
    d1(): number;
    d2(): number;
    k_start(): number;
    /**
     * Pooled sample size.
     */
    n(): number;
    /**
     * Variance-difference profile.
     */
    t(): Float64Array;
    /**
     * Mean-gap (contaminated) profile.
     */
    tc(): Float64Array;
}

export function changePointScan(dgp: string, n: number, tau: number, delta1: number, delta2: number, rho: number, eta1: number, eta2: number, seed: number): CurveView;

export function simulateNull(family: string, eta: number, eta2: number, grid: number, reps: number, seed: number, bins: number): NullView;

export function twoSampleProfiles(dgp: string, n1: number, n2: number, delta1: number, delta2: number, rho: number, eta: number, seed: number): ProfileView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curveview_free: (a: number, b: number) => void;
    readonly __wbg_nullview_free: (a: number, b: number) => void;
    readonly __wbg_profileview_free: (a: number, b: number) => void;
    readonly changePointScan: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
    readonly curveview_k_hat1: (a: number) => number;
    readonly curveview_k_hat2: (a: number) => number;
    readonly curveview_k_start: (a: number) => number;
    readonly curveview_n: (a: number) => number;
    readonly curveview_sn1: (a: number) => [number, number];
    readonly curveview_sn2: (a: number) => [number, number];
    readonly nullview_counts: (a: number) => [number, number];
    readonly nullview_hi: (a: number) => number;
    readonly nullview_lo: (a: number) => number;
    readonly nullview_q90: (a: number) => number;
    readonly nullview_q95: (a: number) => number;
    readonly nullview_q99: (a: number) => number;
    readonly profileview_d1: (a: number) => number;
    readonly profileview_d2: (a: number) => number;
    readonly profileview_k_start: (a: number) => number;
    readonly profileview_n: (a: number) => number;
    readonly profileview_t: (a: number) => [number, number];
    readonly profileview_tc: (a: number) => [number, number];
    readonly simulateNull: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly twoSampleProfiles: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
