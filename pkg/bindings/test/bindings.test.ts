import { readFileSync } from 'fs';
import * as path from 'path';
import { describe, expect, it } from 'vitest';

import {
  InfeasibleError,
  Matrix,
  circulant,
  feasiblePairs,
  generate,
  generateBatch,
  validate,
} from '../src/index';

interface CorpusCase {
  m: number;
  n: number;
  a: number;
  b: number;
  seed: number;
  rows: string[];
}

const corpusPath = path.resolve(__dirname, '..', '..', 'tests', 'golden', 'corpus.json');
const corpus: CorpusCase[] = JSON.parse(readFileSync(corpusPath, 'utf8'));

function toRows(matrix: Matrix): string[] {
  return matrix.map((row) => row.join(''));
}

describe('generate parity with the CLI golden corpus', () => {
  it('covers 20 cases', () => {
    expect(corpus.length).toBe(20);
  });

  for (const c of corpus) {
    it(`matches ${c.m}x${c.n} a=${c.a} b=${c.b} seed=${c.seed} bit-for-bit`, () => {
      const matrix = generate(c.m, c.n, c.a, c.b, c.seed);
      expect(toRows(matrix)).toEqual(c.rows);
    });
  }
});

describe('generate', () => {
  it('throws InfeasibleError carrying the realizable pairs', () => {
    expect.assertions(2);
    try {
      generate(3, 5, 2, 1, 0);
    } catch (err) {
      expect(err).toBeInstanceOf(InfeasibleError);
      expect((err as InfeasibleError).feasiblePairs).toEqual([[0, 0], [5, 3]]);
    }
  });

  it('throws RangeError on out-of-range sums', () => {
    expect(() => generate(3, 3, 4, 4, 0)).toThrow(RangeError);
  });

  it('produces the forced zero matrix', () => {
    expect(generate(3, 3, 0, 0, 5)).toEqual([
      [0, 0, 0],
      [0, 0, 0],
      [0, 0, 0],
    ]);
  });
});

describe('generateBatch', () => {
  it('is independent of the worker count', () => {
    const one = generateBatch(6, 6, 2, 2, 8, 123, 1);
    const four = generateBatch(6, 6, 2, 2, 8, 123, 4);
    expect(one).toEqual(four);
    expect(one.length).toBe(8);
  });

  it('derives per-matrix seeds from the master seed', () => {
    const batch = generateBatch(4, 4, 2, 2, 3, 77);
    for (const matrix of batch) {
      const { valid, rowSum, colSum } = validate(matrix);
      expect(valid).toBe(true);
      expect(rowSum).toBe(2);
      expect(colSum).toBe(2);
    }
  });

  it('throws InfeasibleError for impossible margins', () => {
    expect(() => generateBatch(3, 5, 2, 1, 4, 0)).toThrow(InfeasibleError);
  });
});

describe('circulant', () => {
  it('builds the canonical 4x4 run-of-two witness', () => {
    expect(toRows(circulant(4, 2))).toEqual(['1100', '0110', '0011', '1001']);
  });

  it('handles the forced extremes', () => {
    expect(toRows(circulant(3, 0))).toEqual(['000', '000', '000']);
    expect(toRows(circulant(3, 3))).toEqual(['111', '111', '111']);
  });

  it('rejects k outside [0, n]', () => {
    expect(() => circulant(3, 4)).toThrow(RangeError);
  });
});

describe('validate', () => {
  it('round-trips generated output', () => {
    const matrix = generate(5, 5, 3, 3, 7);
    expect(validate(matrix)).toEqual({ valid: true, rowSum: 3, colSum: 3 });
  });

  it('accepts the identity with detected sums 1', () => {
    const identity = [
      [1, 0, 0],
      [0, 1, 0],
      [0, 0, 1],
    ];
    expect(validate(identity)).toEqual({ valid: true, rowSum: 1, colSum: 1 });
  });

  it('flags non-constant margins', () => {
    expect(validate([[1, 1], [1, 0]]).valid).toBe(false);
  });

  it('rejects ragged input before calling anything', () => {
    expect(() => validate([[1, 0], [1]])).toThrow(TypeError);
  });

  it('rejects non-binary entries', () => {
    expect(() => validate([[1, 2]])).toThrow(TypeError);
  });
});

describe('feasiblePairs', () => {
  it('lists the gcd ladder for 4x6', () => {
    expect(feasiblePairs(4, 6)).toEqual([[0, 0], [3, 2], [6, 4]]);
  });

  it('collapses to the trivial pairs for coprime dimensions', () => {
    expect(feasiblePairs(3, 5)).toEqual([[0, 0], [5, 3]]);
  });

  it('handles the unit grid', () => {
    expect(feasiblePairs(1, 1)).toEqual([[0, 0], [1, 1]]);
  });
});
