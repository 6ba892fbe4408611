import { describe, expect, it } from "vitest";

import {
  fmtRat,
  parseRat,
  rat,
  ratAdd,
  ratEq,
  ratMul,
  ratToNumber,
  snap,
} from "../src/rational.js";

describe("rational literals", () => {
  it("parses p and p/q", () => {
    expect(parseRat("3/4")).toEqual(rat(3n, 4n));
    expect(parseRat("-7")).toEqual(rat(-7n));
    expect(parseRat(" 22/7 ")).toEqual(rat(22n, 7n));
  });

  it("rejects decimals and junk", () => {
    expect(() => parseRat("0.5")).toThrow();
    expect(() => parseRat("1/0")).toThrow();
    expect(() => parseRat("x")).toThrow();
  });

  it("formats reduced", () => {
    expect(fmtRat(rat(6n, 4n))).toBe("3/2");
    expect(fmtRat(rat(-6n, 3n))).toBe("-2");
    expect(fmtRat(rat(5n, -10n))).toBe("-1/2");
  });

  it("round trips", () => {
    for (const s of ["0", "1/3", "-997/1000", "41"]) {
      expect(fmtRat(parseRat(s))).toBe(s);
    }
  });
});

describe("arithmetic", () => {
  it("adds and multiplies exactly", () => {
    expect(ratAdd(rat(1n, 3n), rat(1n, 6n))).toEqual(rat(1n, 2n));
    expect(ratMul(rat(2n, 3n), rat(9n, 4n))).toEqual(rat(3n, 2n));
  });
});

describe("snapping", () => {
  it("keeps denominators bounded", () => {
    for (let i = 0; i <= 200; i++) {
      const x = -1 + (2 * i) / 200 + Math.sin(i) * 1e-4;
      const r = snap(x, 1000);
      expect(r.d <= 1000n).toBe(true);
      expect(Math.abs(ratToNumber(r) - x)).toBeLessThan(2e-3);
    }
  });

  it("is exact on representable rationals", () => {
    expect(ratEq(snap(0.5), rat(1n, 2n))).toBe(true);
    expect(ratEq(snap(-0.1), rat(-1n, 10n))).toBe(true);
    expect(ratEq(snap(1 / 3), rat(1n, 3n))).toBe(true);
    expect(ratEq(snap(0), rat(0n))).toBe(true);
  });
});
