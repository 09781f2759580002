/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_gallery_free: (a: number, b: number) => void;
export const dscop_view: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const gallery_distances: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const gallery_feature: (a: number, b: number) => [number, number];
export const gallery_image: (a: number, b: number) => [number, number];
export const gallery_is_empty: (a: number) => number;
export const gallery_label: (a: number, b: number) => [number, number];
export const gallery_len: (a: number) => number;
export const gallery_new: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const gallery_precision: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const gallery_rank: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const gallery_size: (a: number) => number;
export const glcm_counts: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const synthetic_image: (a: number, b: number, c: number, d: number) => [number, number];
export const voting_histograms: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
