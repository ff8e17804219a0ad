"""Dev script: parse the appendix braid tables out of paper.md into JSON."""

import json
import re

TEXT = open("/root/pkg/paper.md").read()

# Carve out the three table bodies.
tables = re.findall(r"\\begin\{table\}.*?\\end\{table\}", TEXT, re.S)
assert len(tables) == 3, len(tables)


def parse_word(latex: str):
    """Parse a latex braid word into signed letters; expand \\cdots runs.

    Returns (letters, flags) where flags lists anomalies encountered.
    """
    flags = []
    toks = []
    # tokens: (\sigma|\alpha)_(digits)(^{exp})?   or   \cdots
    pat = re.compile(
        r"\\(sigma|alpha)_\{?(\d+)\}?(?:\^\{?(-?\d+)\}?)?|\\cdots"
    )
    for m in pat.finditer(latex):
        if m.group(0) == r"\cdots":
            toks.append(("cdots", None, None))
            continue
        kind, idx, exp = m.group(1), m.group(2), m.group(3)
        if kind == "alpha":
            flags.append(f"alpha_{idx} read as sigma_{idx}")
        if len(idx) > 1:
            flags.append(f"sigma_{idx} ambiguous")
            toks.append(("ambig", idx, exp))
            continue
        e = int(exp) if exp else 1
        toks.append(("sigma", int(idx), e))
    letters = []
    i = 0
    while i < len(toks):
        kind, idx, e = toks[i]
        if kind == "cdots":
            # expand between previous and next sigma tokens
            prev = letters[-1]
            nxt = toks[i + 1]
            assert nxt[0] == "sigma", nxt
            lo, hi = abs(prev), nxt[1]
            sign = 1 if prev > 0 else -1
            nsign = 1 if (nxt[2] or 1) > 0 else -1
            if sign != nsign:
                flags.append(f"cdots with mixed signs near sigma_{nxt[1]}")
            if lo < hi:
                seq = range(lo + 1, hi)
            else:
                seq = range(lo - 1, hi, -1)
            letters.extend(sign * k for k in seq)
            i += 1
            continue
        if kind == "ambig":
            letters.append(("AMBIG", idx, e))
            i += 1
            continue
        sign = 1 if e > 0 else -1
        for _ in range(abs(e)):
            letters.append(sign * idx)
        i += 1
    return letters, flags


def parse_matrix(latex: str):
    body = re.search(r"\\begin\{array\}\{cc\}(.*?)\\end\{array\}", latex, re.S)
    nums = re.findall(r"-?\d+", body.group(1))
    assert len(nums) == 4, nums
    a, b, c, d = map(int, nums)
    return [[a, b], [c, d]]


def split_rows(table_latex: str):
    body = re.search(r"\\begin\{tabular\}.*?\n(.*)\\end\{tabular\}", table_latex, re.S).group(1)
    # rows separated by \\ at top level; use \hline as separator instead
    rows = [r for r in body.split(r"\hline") if r"\sigma" in r or r"\alpha" in r]
    return rows


out = {"tables": []}
for tnum, tbl in enumerate(tables, start=1):
    rows = split_rows(tbl)
    parsed_rows = []
    for row in rows:
        mat_match = re.search(r"\\begin\{array\}\{cc\}.*?\\end\{array\}", row, re.S)
        if mat_match is None:
            continue
        matrix = parse_matrix(mat_match.group(0))
        rest = row[: mat_match.start()] + row[mat_match.end():]
        cells = rest.split("&")
        word_cells = [c for c in cells if (r"\sigma" in c or r"\alpha" in c)]
        typelabel = ""
        tm = re.search(r"(D_4|E_6|E_7|E_8)", row)
        if tm:
            typelabel = tm.group(1).replace("_", "")
        if tnum < 3:
            # columns: type, tau, rho, matrix
            assert len(word_cells) == 2, (len(word_cells), [c[:40] for c in word_cells])
            tau, tflags = parse_word(word_cells[0])
            rho, rflags = parse_word(word_cells[1])
            parsed_rows.append({
                "type": typelabel, "tau": tau, "rho": rho,
                "matrix": matrix, "flags": tflags + rflags,
            })
        else:
            assert len(word_cells) == 1
            tau, tflags = parse_word(word_cells[0])
            parsed_rows.append({
                "type": typelabel, "tau": tau, "rho": None,
                "matrix": matrix, "flags": tflags,
            })
    out["tables"].append(parsed_rows)

print(json.dumps(out, indent=1, default=str)[:4000])
with open("/root/pkg/dev_tables.json", "w") as f:
    json.dump(out, f, indent=1, default=str)
print("rows per table:", [len(t) for t in out["tables"]])
