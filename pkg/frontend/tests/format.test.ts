import { describe, expect, it } from "vitest";
import { money, percent, ratio, signedMoney, signedRatio } from "../src/format.js";

// The service's table renderer is the reference for these shapes; the UI
// must show the same digits the CLI would print for the same response.

describe("money", () => {
  it("renders five fixed decimals", () => {
    expect(money(9.44)).toBe("9.44000");
    expect(money(7.7995)).toBe("7.79950");
    expect(money(0.01)).toBe("0.01000");
    expect(money(-0.10525)).toBe("-0.10525");
  });

  it("renders nullish as empty", () => {
    expect(money(null)).toBe("");
    expect(money(undefined)).toBe("");
  });
});

describe("ratio", () => {
  it("trims trailing zeros from whole ratios", () => {
    expect(ratio(944)).toBe("944");
    expect(ratio(1099)).toBe("1,099");
  });

  it("groups thousands", () => {
    expect(ratio(15599)).toBe("15,599");
    expect(ratio(173684.210526)).toBe("173,684.21053");
  });

  it("keeps up to five decimals", () => {
    expect(ratio(0.839454545455)).toBe("0.83945");
    expect(ratio(0.8)).toBe("0.8");
  });

  it("spells out an undefined ratio", () => {
    expect(ratio(null)).toBe("undefined");
  });

  it("collapses exact zero", () => {
    expect(ratio(0)).toBe("0");
  });
});

describe("signed forms", () => {
  it("always carries a sign", () => {
    expect(signedMoney(1.6405)).toBe("+1.64050");
    expect(signedMoney(-0.446)).toBe("-0.44600");
    expect(signedRatio(-14655)).toBe("-14,655");
    expect(signedRatio(null)).toBe("undefined");
  });
});

describe("percent", () => {
  it("rounds a fraction to whole percent", () => {
    expect(percent(0)).toBe("0%");
    expect(percent(0.424)).toBe("42%");
    expect(percent(1)).toBe("100%");
  });
});
