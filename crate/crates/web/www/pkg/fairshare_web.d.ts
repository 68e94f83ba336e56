/* tslint:disable */
/* eslint-disable */

/**
 * MMS, APS with both certificates, and for binary XOS agents the balanced
 * allocation bound, for one agent of an instance document.
 */
export function analyze_instance(instance_json: string, agent: number): string;

/**
 * Common share of `n` agents with the rank function of a matroid on `m`
 * elements, the disjoint bases behind it and a complete allocation.
 */
export function matroid_share(spec_json: string, m: number, n: number): string;

/**
 * Reduction report for a 3DM source `{"m3":..,"triples":[..]}` with
 * `m3 <= 3`, plus the value of every triple-shaped set under the reduced
 * valuation.
 */
export function verify_3dm(source_json: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_instance: (a: number, b: number, c: number) => [number, number];
    readonly matroid_share: (a: number, b: number, c: number, d: number) => [number, number];
    readonly verify_3dm: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
