/**
 * Bindings over the `binmagic` command-line tool.
 *
 * Every call shells out to the CLI and exchanges matrices through its json
 * and dense text formats, so the bit patterns seen here are exactly the ones
 * the primary library produces for the same arguments.  Matrices cross the
 * boundary as plain number[][] of 0/1 values, row-major.
 */

import { spawnSync } from 'child_process';
import * as path from 'path';

export type Matrix = number[][];

export interface ValidationResult {
  valid: boolean;
  rowSum: number | null;
  colSum: number | null;
}

/** Requested margins cannot be realized; carries every pair that can. */
export class InfeasibleError extends Error {
  constructor(message: string, public readonly feasiblePairs: Array<[number, number]>) {
    super(message);
    this.name = 'InfeasibleError';
  }
}

export class CliError extends Error {
  constructor(message: string, public readonly exitCode: number | null) {
    super(message);
    this.name = 'CliError';
  }
}

// dist/ and src/ both sit one level under the package root, which sits next
// to the primary package's src/.
const PRIMARY_SRC = path.resolve(__dirname, '..', '..', 'src');

interface RunResult {
  status: number | null;
  stdout: string;
  stderr: string;
}

function runCli(args: string[], input?: string): RunResult {
  const python = process.env.BINMAGIC_PYTHON ?? 'python3';
  const proc = spawnSync(python, ['-m', 'binmagic', ...args], {
    input,
    encoding: 'utf8',
    maxBuffer: 1 << 28,
    env: {
      ...process.env,
      PYTHONPATH: process.env.PYTHONPATH
        ? `${PRIMARY_SRC}${path.delimiter}${process.env.PYTHONPATH}`
        : PRIMARY_SRC,
    },
  });
  if (proc.error) {
    throw new CliError(`failed to launch ${python}: ${proc.error.message}`, null);
  }
  return { status: proc.status, stdout: proc.stdout, stderr: proc.stderr };
}

function checkInt(name: string, value: number): void {
  if (!Number.isSafeInteger(value)) {
    throw new TypeError(`${name} must be an integer, got ${value}`);
  }
}

function seedArg(seed: number | bigint): string {
  if (typeof seed === 'number') {
    checkInt('seed', seed);
  }
  return seed.toString();
}

function rowsToMatrix(rows: string[]): Matrix {
  return rows.map((row) => Array.from(row, (ch) => (ch === '1' ? 1 : 0)));
}

function parseJsonRecords(stdout: string): Matrix[] {
  const records = JSON.parse(stdout) as Array<{ rows: string[] }>;
  return records.map((rec) => rowsToMatrix(rec.rows));
}

function marginArgs(m: number, n: number, a: number, b: number): string[] {
  checkInt('m', m);
  checkInt('n', n);
  checkInt('a', a);
  checkInt('b', b);
  return ['-m', String(m), '-n', String(n), '--row-sum', String(a), '--col-sum', String(b)];
}

function raiseGenFailure(m: number, n: number, result: RunResult): never {
  if (result.status === 1) {
    throw new InfeasibleError(result.stderr.trim(), feasiblePairs(m, n));
  }
  if (result.status === 64) {
    throw new RangeError(result.stderr.trim());
  }
  throw new CliError(result.stderr.trim(), result.status);
}

/** One matrix with row sums a and column sums b; a pure function of the seed. */
export function generate(m: number, n: number, a: number, b: number,
                         seed: number | bigint): Matrix {
  const result = runCli(['gen', ...marginArgs(m, n, a, b),
                         '--seed', seedArg(seed), '--format', 'json']);
  if (result.status !== 0) {
    raiseGenFailure(m, n, result);
  }
  return parseJsonRecords(result.stdout)[0];
}

/** `count` matrices with per-matrix seeds derived from the master seed. */
export function generateBatch(m: number, n: number, a: number, b: number,
                              count: number, masterSeed: number | bigint,
                              workers = 0): Matrix[] {
  checkInt('count', count);
  checkInt('workers', workers);
  const result = runCli(['gen', ...marginArgs(m, n, a, b),
                         '--seed', seedArg(masterSeed), '--count', String(count),
                         '--workers', String(workers), '--format', 'json']);
  if (result.status !== 0) {
    raiseGenFailure(m, n, result);
  }
  return parseJsonRecords(result.stdout);
}

/** The canonical seedless witness: a run of k ones per row, rotating rightward. */
export function circulant(n: number, k: number): Matrix {
  checkInt('n', n);
  checkInt('k', k);
  const result = runCli(['gen', '-n', String(n), '-k', String(k),
                         '--deterministic', '--format', 'json']);
  if (result.status !== 0) {
    raiseGenFailure(n, n, result);
  }
  return parseJsonRecords(result.stdout)[0];
}

/** Whether all row sums agree and all column sums agree, and on what values. */
export function validate(matrix: Matrix): ValidationResult {
  if (!Array.isArray(matrix) || matrix.length === 0) {
    throw new TypeError('matrix must be a non-empty array of rows');
  }
  const width = matrix[0].length;
  for (const row of matrix) {
    if (!Array.isArray(row) || row.length !== width || width === 0) {
      throw new TypeError('matrix rows must be non-empty and all the same length');
    }
    for (const v of row) {
      if (v !== 0 && v !== 1) {
        throw new TypeError(`matrix entries must be 0 or 1, got ${v}`);
      }
    }
  }
  const dense = matrix.map((row) => row.join('')).join('\n') + '\n';
  const result = runCli(['check', '--format', 'dense'], dense);
  if (result.status === 0) {
    const match = result.stdout.match(/^VALID a=(\d+) b=(\d+)/);
    if (!match) {
      throw new CliError(`unexpected check output: ${result.stdout}`, result.status);
    }
    return { valid: true, rowSum: Number(match[1]), colSum: Number(match[2]) };
  }
  if (result.status === 2) {
    return { valid: false, rowSum: null, colSum: null };
  }
  throw new CliError(result.stderr.trim(), result.status);
}

/** Every realizable (rowSum, colSum) pair for an m x n grid, ascending. */
export function feasiblePairs(m: number, n: number): Array<[number, number]> {
  checkInt('m', m);
  checkInt('n', n);
  const result = runCli(['feasible', '-m', String(m), '-n', String(n)]);
  if (result.status === 64) {
    throw new RangeError(result.stderr.trim());
  }
  if (result.status !== 0) {
    throw new CliError(result.stderr.trim(), result.status);
  }
  return result.stdout
    .trim()
    .split('\n')
    .map((line) => {
      const [a, b] = line.split(' ').map(Number);
      return [a, b] as [number, number];
    });
}
