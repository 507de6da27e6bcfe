#!/usr/bin/env python3
"""The degree-8 verification: the Glennie polynomial is a plus-identity of
assosymmetric algebras (two-prime modular strategy at characteristic 0, plus
the characteristic-3 branch), with the element-equality check at [3,3,1] done
exactly over the rationals."""

import argparse
import time

from freealg import engine, tideal


def run(label, fn):
    t0 = time.time()
    verdict = fn()
    print("%-44s %s  (%.0fs)%s"
          % (label, "identity" if verdict.is_identity else "NOT an identity",
             time.time() - t0,
             "  [%s]" % "; ".join(verdict.warnings) if verdict.warnings else ""))
    return verdict.is_identity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-char3", action="store_true")
    args = ap.parse_args()
    assym = tideal.get_variety("assosymmetric")

    ok = run("star form of the triple-commutator element",
             lambda: engine.is_identity(assym, "D(t1,t2,t3) - shest(t1,t2,t3)", 0, "direct"))
    ok &= run("glennie, char 0 (two-prime modular)",
              lambda: engine.is_identity(assym, "glen(t1,t2,t3)", 0, "plus"))
    if not args.skip_char3:
        ok &= run("glennie, char 3",
                  lambda: engine.is_identity(assym, "glen(t1,t2,t3)", 3, "plus"))
        ok &= run("multilinear jordan, char 3",
                  lambda: engine.is_identity(assym, "wjor(t1,t2,t3,t4)", 3, "plus"))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
