/* tslint:disable */
/* eslint-disable */

/**
 * A generated, labeled image collection indexed under one scheme.
 */
export class Gallery {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Distances matching [`Gallery::rank`].
     */
    distances(i: number, metric: string, n: number): Float64Array;
    feature(i: number): Float64Array;
    image(i: number): Uint8Array;
    is_empty(): boolean;
    label(i: number): string;
    len(): number;
    constructor(classes: number, per_class: number, size: number, seed: number, k_bins: number, l_bins: number);
    /**
     * Precision of the top `n` results for image `i` (fraction sharing its label).
     */
    precision(i: number, metric: string, n: number): number;
    /**
     * Gallery positions of the `n` nearest images to image `i`.
     */
    rank(i: number, metric: string, n: number): Uint32Array;
    size(): number;
}

/**
 * DSCoP codes of the value channel as an RGBA image two pixels smaller in
 * each direction; codes 0..63 are stretched to gray levels 0..252.
 */
export function dscop_view(rgba: Uint8Array, width: number, height: number): Uint8Array;

/**
 * Raw 16x16 co-occurrence counts of the quantized DSCoP map, row-major.
 */
export function glcm_counts(rgba: Uint8Array, width: number, height: number): Uint32Array;

/**
 * RGBA pixels of one synthetic image from class `class` of `classes`.
 */
export function synthetic_image(_class: number, classes: number, size: number, seed: number): Uint8Array;

/**
 * Hue-voted (K bins) followed by saturation-voted (L bins) histogram,
 * each L1-normalized.
 */
export function voting_histograms(rgba: Uint8Array, width: number, height: number, k_bins: number, l_bins: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_gallery_free: (a: number, b: number) => void;
    readonly dscop_view: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly gallery_distances: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly gallery_feature: (a: number, b: number) => [number, number];
    readonly gallery_image: (a: number, b: number) => [number, number];
    readonly gallery_is_empty: (a: number) => number;
    readonly gallery_label: (a: number, b: number) => [number, number];
    readonly gallery_len: (a: number) => number;
    readonly gallery_new: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly gallery_precision: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly gallery_rank: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly gallery_size: (a: number) => number;
    readonly glcm_counts: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly synthetic_image: (a: number, b: number, c: number, d: number) => [number, number];
    readonly voting_histograms: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
