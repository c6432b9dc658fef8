#!/usr/bin/env python3
"""Convert an Orange/UCI tab-separated table into a transaction file.

Every (attribute, value) pair of a non-class, non-meta attribute becomes one
item. Missing values ('?' or empty) are kept as their own value. Items are
numbered densely from 0 in attribute order, values in order of first
appearance. Output: one transaction per line, whitespace-separated item ids.
"""
import argparse
import sys


def read_tab(path):
    with open(path, encoding="utf-8") as fh:
        rows = [line.rstrip("\n").split("\t") for line in fh]
    header, _types, flags, data = rows[0], rows[1], rows[2], rows[3:]
    data = [r for r in data if any(cell.strip() for cell in r)]
    flags = flags + [""] * (len(header) - len(flags))
    return header, flags, data


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("table")
    ap.add_argument("--keep-class", action="store_true")
    ap.add_argument("--mapping", help="write item,attribute,value CSV here")
    args = ap.parse_args()

    header, flags, data = read_tab(args.table)
    columns = []
    for j, flag in enumerate(flags):
        tags = flag.split()
        if "meta" in tags or "m" in tags or "ignore" in tags or "i" in tags:
            continue
        if ("class" in tags or "c" in tags) and not args.keep_class:
            continue
        columns.append(j)

    item_of = {}
    out = []
    for row in data:
        row = row + [""] * (len(header) - len(row))
        items = []
        for j in columns:
            value = row[j].strip() or "?"
            key = (j, value)
            if key not in item_of:
                item_of[key] = len(item_of)
            items.append(item_of[key])
        out.append(" ".join(str(i) for i in sorted(items)))

    sys.stdout.write("\n".join(out) + "\n")
    if args.mapping:
        with open(args.mapping, "w", encoding="utf-8") as fh:
            fh.write("item,attribute,value\n")
            for (j, value), item in sorted(item_of.items(), key=lambda kv: kv[1]):
                fh.write(f"{item},{header[j]},{value}\n")


if __name__ == "__main__":
    main()
