/* tslint:disable */
/* eslint-disable */

/**
 * Structural verdict with the numerical spectrum attached.
 */
export function classify_graph(text: string): string;

/**
 * Delayed consensus trajectory. `x0_text` holds one number per node.
 */
export function consensus_run(text: string, tau: number, t_max: number, x0_text: string): string;

/**
 * Closed-form and numerical spectra of a generated graph. `kind` is
 * `cycle`, `udcec` or `dcid`; `dcid` rings `m` copies of `base_text`.
 */
export function layered_spectra(kind: string, n: number, m: number, base_text: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify_graph: (a: number, b: number) => [number, number, number, number];
    readonly consensus_run: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly layered_spectra: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
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
