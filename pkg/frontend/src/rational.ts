/** Exact rationals on bigint, mirroring the service's "p/q" wire format.
 *
 * The slider snaps floats to rationals with bounded denominator so every
 * deform request stays exact; free-typed "p/q" strings pass through
 * unchanged.
 */

export interface Rat {
  readonly n: bigint;
  readonly d: bigint; // always > 0
}

function bgcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function rat(n: bigint | number, d: bigint | number = 1n): Rat {
  let nn = BigInt(n);
  let dd = BigInt(d);
  if (dd === 0n) throw new Error("zero denominator");
  if (dd < 0n) {
    nn = -nn;
    dd = -dd;
  }
  const g = bgcd(nn, dd) || 1n;
  return { n: nn / g, d: dd / g };
}

const RAT_RE = /^([+-]?\d+)(?:\/(\d+))?$/;

export function parseRat(s: string): Rat {
  const m = RAT_RE.exec(s.trim());
  if (!m) throw new Error(`bad rational literal ${JSON.stringify(s)}`);
  return rat(BigInt(m[1]!), m[2] ? BigInt(m[2]) : 1n);
}

export function fmtRat(r: Rat): string {
  return r.d === 1n ? r.n.toString() : `${r.n}/${r.d}`;
}

export function ratAdd(a: Rat, b: Rat): Rat {
  return rat(a.n * b.d + b.n * a.d, a.d * b.d);
}

export function ratMul(a: Rat, b: Rat): Rat {
  return rat(a.n * b.n, a.d * b.d);
}

export function ratNeg(a: Rat): Rat {
  return { n: -a.n, d: a.d };
}

export function ratEq(a: Rat, b: Rat): boolean {
  return a.n === b.n && a.d === b.d;
}

export function ratToNumber(a: Rat): number {
  return Number(a.n) / Number(a.d);
}

/** Best rational approximation with denominator <= maxDen, by the
 * Stern-Brocot walk; exact for inputs that are such rationals already. */
export function snap(x: number, maxDen = 1000): Rat {
  if (!Number.isFinite(x)) throw new Error("cannot snap a non-finite value");
  const neg = x < 0;
  let v = Math.abs(x);
  let [pl, ql, pr, qr] = [0n, 1n, 1n, 0n]; // 0/1 and 1/0
  let best: Rat = rat(Math.round(v));
  let bestErr = Math.abs(v - ratToNumber(best));
  for (let i = 0; i < 4096; i++) {
    const pm = pl + pr;
    const qm = ql + qr;
    if (qm > BigInt(maxDen)) break;
    const mid = Number(pm) / Number(qm);
    const err = Math.abs(v - mid);
    if (err < bestErr) {
      best = { n: pm, d: qm };
      bestErr = err;
    }
    if (err === 0) break;
    if (v > mid) {
      [pl, ql] = [pm, qm];
    } else {
      [pr, qr] = [pm, qm];
    }
  }
  return neg ? ratNeg(best) : best;
}
