#!/usr/bin/env python3
"""Fetch and normalize the benchmark datasets into data/.

Downloads the canonical copies of the networks listed in data/MANIFEST.md,
converts them to plain edge lists, and validates node/edge counts.  Run it
on a machine with internet access; the benchmark itself never fetches.

Usage:
    python scripts/fetch_datasets.py [name ...]     # default: all missing
    python scripts/fetch_datasets.py --checksum     # print sha256 of data/
"""

from __future__ import annotations

import gzip
import hashlib
import io
import re
import sys
import tarfile
import urllib.request
import zipfile
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

DATASETS = {
    "dolphins": {
        "url": "https://websites.umich.edu/~mejn/netdata/dolphins.zip",
        "kind": "gml-zip",
        "member": "dolphins.gml",
        "expect": (62, 159),
    },
    "polbooks": {
        "url": "https://websites.umich.edu/~mejn/netdata/polbooks.zip",
        "kind": "gml-zip",
        "member": "polbooks.gml",
        "expect": (105, 441),
    },
    "email-eu-core": {
        "url": "https://snap.stanford.edu/data/email-Eu-core.txt.gz",
        "kind": "txt-gz",
        "expect": (1005, 25571),
    },
    "facebook-artist": {
        "url": "https://snap.stanford.edu/data/gemsec_facebook_dataset.tar.gz",
        "kind": "gemsec-tar",
        "member": "facebook_clean_data/artist_edges.csv",
        "expect": (50515, 819306),
    },
}


def _gml_edges(text: str) -> list[tuple[str, str]]:
    ids = re.findall(r"edge\s*\[\s*source\s+(\d+)\s+target\s+(\d+)", text)
    return [(a, b) for a, b in ids]


def _normalize(pairs: list[tuple[str, str]]) -> list[tuple[str, str]]:
    seen = set()
    out = []
    for a, b in pairs:
        if a == b:
            continue
        key = tuple(sorted((a, b)))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return sorted(out)


def fetch(name: str) -> Path:
    spec = DATASETS[name]
    print(f"fetching {name} from {spec['url']} ...")
    blob = urllib.request.urlopen(spec["url"]).read()
    if spec["kind"] == "gml-zip":
        with zipfile.ZipFile(io.BytesIO(blob)) as zf:
            text = zf.read(spec["member"]).decode("utf-8", "replace")
        pairs = _gml_edges(text)
    elif spec["kind"] == "txt-gz":
        text = gzip.decompress(blob).decode("utf-8")
        pairs = [
            tuple(line.split()[:2])
            for line in text.splitlines()
            if line.strip() and not line.startswith("#")
        ]
    elif spec["kind"] == "gemsec-tar":
        with tarfile.open(fileobj=io.BytesIO(blob)) as tf:
            text = tf.extractfile(spec["member"]).read().decode("utf-8")
        pairs = [
            tuple(line.split(",")[:2])
            for line in text.splitlines()[1:]
            if line.strip()
        ]
    else:
        raise ValueError(spec["kind"])

    edges = _normalize(pairs)
    nodes = {u for e in edges for u in e}
    expect_n, expect_m = spec["expect"]
    if (len(nodes), len(edges)) != (expect_n, expect_m):
        raise SystemExit(
            f"{name}: got {len(nodes)} nodes / {len(edges)} edges, "
            f"expected {expect_n}/{expect_m} — refusing to write"
        )
    out = DATA_DIR / f"{name}.edges"
    with open(out, "w", encoding="utf-8") as fh:
        for a, b in edges:
            fh.write(f"{a} {b}\n")
    print(f"wrote {out} ({expect_n} nodes / {expect_m} edges)")
    return out


def checksums() -> None:
    for path in sorted(DATA_DIR.glob("*.edges")):
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        print(f"{digest}  {path.name}")


def main(argv: list[str]) -> int:
    if argv and argv[0] == "--checksum":
        checksums()
        return 0
    names = argv or [
        name for name in DATASETS
        if not (DATA_DIR / f"{name}.edges").exists()
    ]
    for name in names:
        if name not in DATASETS:
            raise SystemExit(f"unknown dataset {name!r}; "
                             f"choices: {sorted(DATASETS)}")
        fetch(name)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
