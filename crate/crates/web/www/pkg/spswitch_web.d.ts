/* tslint:disable */
/* eslint-disable */

/**
 * RGBA pixels (`n × n × 4` bytes) of the adjacency matrix of a variant.
 */
export function adjacency_rgba(nu: number, variant: string): Uint8Array;

/**
 * JSON: order, strong regularity, cells in drawing order and the switch.
 */
export function graph_summary(nu: number, variant: string): string;

export function neighbour_table(nu: number, variant: string): string;

export function scan_minima(nu: number, seed: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly adjacency_rgba: (a: number, b: number, c: number) => [number, number, number, number];
    readonly graph_summary: (a: number, b: number, c: number) => [number, number, number, number];
    readonly neighbour_table: (a: number, b: number, c: number) => [number, number, number, number];
    readonly scan_minima: (a: number, b: bigint) => [number, number, number, number];
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
