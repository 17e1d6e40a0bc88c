/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curveview_free: (a: number, b: number) => void;
export const __wbg_nullview_free: (a: number, b: number) => void;
export const __wbg_profileview_free: (a: number, b: number) => void;
export const changePointScan: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
export const curveview_k_hat1: (a: number) => number;
export const curveview_k_hat2: (a: number) => number;
export const curveview_k_start: (a: number) => number;
export const curveview_n: (a: number) => number;
export const curveview_sn1: (a: number) => [number, number];
export const curveview_sn2: (a: number) => [number, number];
export const nullview_counts: (a: number) => [number, number];
export const nullview_hi: (a: number) => number;
export const nullview_lo: (a: number) => number;
export const nullview_q90: (a: number) => number;
export const nullview_q95: (a: number) => number;
export const nullview_q99: (a: number) => number;
export const profileview_d1: (a: number) => number;
export const profileview_d2: (a: number) => number;
export const profileview_k_start: (a: number) => number;
export const profileview_n: (a: number) => number;
export const profileview_t: (a: number) => [number, number];
export const profileview_tc: (a: number) => [number, number];
export const simulateNull: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const twoSampleProfiles: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
