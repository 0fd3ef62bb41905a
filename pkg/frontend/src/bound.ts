/**
 * Closed-form guaranteed-recovery atom bound, used to place the vertical
 * marker on error curves.  Mirrors theoretical_atom_bound in the Python
 * package; the shared value table is pinned in both test suites.
 */

function binomial(n: number, k: number): number {
  if (k < 0 || k > n) return 0;
  let result = 1;
  for (let i = 1; i <= Math.min(k, n - k); i += 1) {
    result = (result * (n - i + 1)) / i;
    if (!Number.isSafeInteger(result)) {
      throw new Error(`binomial(${n}, ${k}) exceeds exact integer range`);
    }
  }
  return result;
}

/**
 * floor((N + 1)/2 - C(n+2d, 2d)/N) with N = C(n+d, d), clamped at zero.
 * Evaluated as the exact integer floor of (N(N+1) - 2 C(n+2d, 2d)) / (2N).
 */
export function theoreticalAtomBound(n: number, d: number): number {
  if (!Number.isInteger(n) || !Number.isInteger(d) || n < 1 || d < 1) {
    throw new Error(`atom bound needs positive integers, got n=${n} d=${d}`);
  }
  const N = binomial(n + d, d);
  const numerator = N * (N + 1) - 2 * binomial(n + 2 * d, 2 * d);
  const denominator = 2 * N;
  const remainder = ((numerator % denominator) + denominator) % denominator;
  return Math.max(0, (numerator - remainder) / denominator);
}
