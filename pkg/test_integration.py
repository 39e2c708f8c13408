#!/usr/bin/env python3
"""
Smoke run of the analyzer CLI over the shipped fixtures
"""
import io
import json
import os
import sys
from contextlib import redirect_stdout

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from scripts.tam_cli import main


def run_cli(*argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main([str(a) for a in argv])
    return code, buffer.getvalue()


def check_classification():
    """Every shipped fixture classifies the way its name says"""
    print("Checking classification...")
    expected = {
        "FIX-RAY": ("infinite", 0),
        "FIX-LINE3": ("finite", 0),
        "FIX-CONFLICT": ("non-directed", 1),
        "FIX-SPAN": ("finite", 0),
        "FIX-ZIGZAG": ("finite", 0),
    }
    ok = True
    for name, (result, code) in expected.items():
        got_code, out = run_cli("classify", name)
        got = json.loads(out).get("result")
        if got == result and got_code == code:
            print(f"✓ {name}: {got}")
        else:
            print(f"✗ {name}: expected {result}/{code}, got {got}/{got_code}")
            ok = False
    return ok


def check_canonical_chain():
    """canonical output feeds cuts through --input"""
    print("\nChecking canonical -> cuts...")
    try:
        code, out = run_cli("canonical", "--column", "1", "FIX-SPAN")
        doc = json.loads(out)
        print(f"✓ canonical path of {len(doc['path'])} tiles (exit {code})")

        target = os.path.join(os.path.dirname(os.path.abspath(__file__)), "logs", "canonical_smoke.json")
        os.makedirs(os.path.dirname(target), exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            f.write(out)
        code, out = run_cli("cuts", "FIX-SPAN", "--input", target)
        print(f"✓ {len(json.loads(out)['cuts'])} cuts (exit {code})")
    except Exception as e:
        print(f"✗ canonical chain failed: {e}")
        return False
    return code == 0


def check_verify():
    """One suite over the fixtures only"""
    print("\nChecking verify...")
    code, out = run_cli("verify", "--suite", "spans", "--samples", "0")
    doc = json.loads(out)
    for verdict in doc["verdicts"]:
        mark = "✓" if verdict["passed"] else "✗"
        print(f"{mark} {verdict['lemma']}: {verdict['preconditions_met']} met {verdict['note'] or ''}")
    return code == 0


if __name__ == "__main__":
    print("Tile Assembly Path Analyzer Smoke Test")
    print("=" * 40)

    results = [check_classification(), check_canonical_chain(), check_verify()]

    print("\n" + "=" * 40)
    if all(results):
        print("🎉 All checks passed!")
    else:
        print("❌ Some checks failed. Check the output above.")
        sys.exit(1)
