/* tslint:disable */
/* eslint-disable */

/**
 * Residuals `[j_0, r_0, j_1, r_1, …]` for `j = max(k, 1) ..= j_max`.
 */
export function contraction_curve(k: number, j_max: number): Float64Array;

/**
 * Canonical form, rank, grade operator image and interchange JSON of an
 * expression such as `{1} ^ {{1}} + 1/2*e5`.
 */
export function evaluate(expr: string): string;

/**
 * JSON rows `{serial, rank, grade, set}` for serials `from..=to`.
 */
export function serial_table(from: number, to: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly contraction_curve: (a: number, b: number) => [number, number, number, number];
    readonly evaluate: (a: number, b: number) => [number, number, number, number];
    readonly serial_table: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
