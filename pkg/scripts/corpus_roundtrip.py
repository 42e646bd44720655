"""Write every built-in morphism to JSON and push it through recovery.

Usage: python3 scripts/corpus_roundtrip.py [OUTPUT_DIR]
"""
import sys
import time
from pathlib import Path

from tropmorph import io, oracle_from_pullback, recover_morphism, verify_recovery
from tropmorph.corpus import CORPUS, EXTRA_MORPHISMS


def main(argv: list[str]) -> int:
    out = Path(argv[0]) if argv else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name, make in {**CORPUS, **EXTRA_MORPHISMS}.items():
        phi = make()
        if out:
            (out / f"{name}.json").write_text(io.dumps(io.morphism_to_json(phi)), encoding="utf-8")
        start = time.perf_counter()
        psi = oracle_from_pullback(phi)
        res = recover_morphism(psi)
        ok = res.morphism == phi and verify_recovery(psi, res).ok
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:<20} {psi.calls:5d} oracle calls  "
              f"{time.perf_counter() - start:6.2f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
