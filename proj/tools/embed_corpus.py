#!/usr/bin/env python3
"""Bake the proof scripts under proofs/ into a C++ translation unit.

Usage: embed_corpus.py <proofs_dir> <output.cpp>

Scripts are embedded verbatim (raw string literals) together with their
basename (without the .proof extension), in sorted filename order so that
dependency registration is deterministic.
"""
import os
import sys


def main() -> int:
    proofs_dir, out_path = sys.argv[1], sys.argv[2]
    entries = []
    if os.path.isdir(proofs_dir):
        for fn in sorted(os.listdir(proofs_dir)):
            if not fn.endswith(".proof"):
                continue
            with open(os.path.join(proofs_dir, fn), "r", encoding="utf-8") as f:
                text = f.read()
            name = fn[: -len(".proof")]
            if ")AICRAW(" in text:
                raise SystemExit(f"{fn}: cannot embed, contains raw-string delimiter")
            entries.append((name, text))

    lines = []
    lines.append("// Generated by tools/embed_corpus.py -- do not edit.")
    lines.append("#include <string>")
    lines.append("#include <utility>")
    lines.append("#include <vector>")
    lines.append("")
    lines.append("namespace aic {")
    lines.append("const std::vector<std::pair<std::string, std::string>>& embedded_corpus() {")
    lines.append("  static const std::vector<std::pair<std::string, std::string>> table = {")
    for name, text in entries:
        lines.append('      {"%s", R"AICRAW(%s)AICRAW"},' % (name, text))
    lines.append("  };")
    lines.append("  return table;")
    lines.append("}")
    lines.append("}  // namespace aic")
    lines.append("")

    with open(out_path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
