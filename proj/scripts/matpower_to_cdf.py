#!/usr/bin/env python3
"""Convert a MATPOWER case file (.m) into IEEE Common Data Format text.

Used to produce tests/data/ieee118.cdf and tests/data/ieee30.cdf from the
MATPOWER distribution of the UW power systems test case archive.

    python3 scripts/matpower_to_cdf.py case118.m > tests/data/ieee118.cdf
"""
import re
import sys


def matrix(text, name):
    m = re.search(r"mpc\.%s\s*=\s*\[(.*?)\];" % name, text, re.S)
    rows = []
    for line in m.group(1).splitlines():
        line = line.split("%")[0].strip().rstrip(";")
        if line:
            rows.append([float(v) for v in line.split()])
    return rows


def names(text):
    m = re.search(r"mpc\.bus_name\s*=\s*\{(.*?)\};", text, re.S)
    if not m:
        return None
    return re.findall(r"'([^']*)'", m.group(1))


def put(card, col, width, value, left=False):
    """Write value into 1-based column col spanning width characters."""
    s = value.ljust(width) if left else value.rjust(width)
    if len(s) > width:
        raise ValueError("field overflow: %r in %d columns" % (value, width))
    start = col - 1
    card[start:start + width] = list(s)


def num(v, width, decimals):
    s = "%.*f" % (decimals, v)
    while len(s) > width and decimals > 0:
        decimals -= 1
        s = "%.*f" % (decimals, v)
    return s


def main(path):
    text = open(path).read()
    base = float(re.search(r"mpc\.baseMVA\s*=\s*([\d.]+)", text).group(1))
    buses = matrix(text, "bus")
    gens = matrix(text, "gen")
    branches = matrix(text, "branch")
    bus_names = names(text)
    title = re.search(r"%\s*(\d\d/\d\d/\d\d .*)", text)

    gen_p, gen_q, q_max, q_min, v_set = {}, {}, {}, {}, {}
    for g in gens:
        b = int(g[0])
        gen_p[b] = gen_p.get(b, 0.0) + g[1]
        gen_q[b] = gen_q.get(b, 0.0) + g[2]
        q_max[b] = q_max.get(b, 0.0) + g[3]
        q_min[b] = q_min.get(b, 0.0) + g[4]
        v_set[b] = g[5]

    out = []
    card = [" "] * 73
    head = title.group(1) if title else "01/01/00 MATPOWER            %6.1f  2000 W converted case" % base
    out.append(" " + head.strip())
    out.append("BUS DATA FOLLOWS                            %d ITEMS" % len(buses))
    type_code = {1: 0, 2: 2, 3: 3, 4: 0}
    for i, b in enumerate(buses):
        n = int(b[0])
        card = [" "] * 127
        put(card, 1, 4, str(n))
        nm = (bus_names[i] if bus_names else "Bus %d" % n)[:12]
        put(card, 6, 12, nm, left=True)
        put(card, 19, 2, str(int(b[6])))
        put(card, 21, 3, str(int(b[10])))
        put(card, 25, 2, str(type_code[int(b[1])]))
        put(card, 28, 6, num(b[7], 6, 4))
        put(card, 34, 7, num(b[8], 7, 2))
        put(card, 41, 9, num(b[2], 9, 2))
        put(card, 50, 10, num(b[3], 10, 2))
        put(card, 60, 8, num(gen_p.get(n, 0.0), 8, 2))
        put(card, 68, 8, num(gen_q.get(n, 0.0), 8, 2))
        put(card, 77, 7, num(b[9], 7, 1))
        put(card, 85, 6, num(v_set.get(n, 0.0), 6, 4))
        put(card, 91, 8, num(q_max.get(n, 0.0), 8, 1))
        put(card, 99, 8, num(q_min.get(n, 0.0), 8, 1))
        put(card, 107, 8, num(b[4] / base, 8, 4))
        put(card, 115, 8, num(b[5] / base, 8, 4))
        put(card, 124, 4, "0")
        out.append("".join(card).rstrip())
    out.append("-999")
    out.append("BRANCH DATA FOLLOWS                         %d ITEMS" % len(branches))
    seen = {}
    for br in branches:
        f, t = int(br[0]), int(br[1])
        key = (min(f, t), max(f, t))
        seen[key] = seen.get(key, 0) + 1
        card = [" "] * 126
        put(card, 1, 4, str(f))
        put(card, 6, 4, str(t))
        put(card, 11, 2, "1")
        put(card, 13, 2, "1")
        put(card, 17, 1, str(seen[key]))
        put(card, 19, 1, "1" if br[8] != 0 else "0")
        put(card, 20, 10, num(br[2], 10, 5))
        put(card, 30, 11, num(br[3], 11, 5))
        put(card, 41, 10, num(br[4], 10, 5))
        put(card, 51, 5, str(int(br[5])), left=True)
        put(card, 57, 5, str(int(br[6])), left=True)
        put(card, 63, 5, str(int(br[7])), left=True)
        put(card, 69, 4, "0")
        put(card, 74, 1, "0")
        put(card, 77, 6, num(br[8], 6, 4))
        put(card, 84, 7, num(br[9], 7, 2))
        if br[10] == 0:
            sys.stderr.write("branch %d-%d out of service\n" % (f, t))
        out.append("".join(card).rstrip())
    out.append("-999")
    out.append("LOSS ZONES FOLLOWS                     1 ITEMS")
    out.append("  1 ZONE 1")
    out.append("-99")
    out.append("INTERCHANGE DATA FOLLOWS                 1 ITEMS")
    out.append(" 1    1 Area 1        0.0  999.99  AREA1  AREA 1")
    out.append("-9")
    out.append("TIE LINES FOLLOWS                     0 ITEMS")
    out.append("-999")
    out.append("END OF DATA")
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
