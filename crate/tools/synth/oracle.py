#!/usr/bin/env python3
"""Straight-line reference computation over the synthetic corpus.

Reads data/synthetic/{sample.csv,resolver.json,indicators.json,strobe.csv}
and writes data/synthetic/expected.json.  Uses numpy/scipy directly and
shares no code with the Rust implementation; the acceptance suite compares
against the frozen output.
"""

import csv
import itertools
import json
import os

import numpy as np
from scipy import stats

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "..", "data", "synthetic")

CATEGORIES = ["Citations", "Captures", "Mentions", "SocialMedia", "Usage"]
SETS = {
    "C": ["Citations"],
    "A": ["Captures", "Mentions", "SocialMedia", "Usage"],
    "I": ["Citations", "Captures", "Mentions", "SocialMedia", "Usage"],
    "Iprime": ["Citations", "Mentions", "SocialMedia"],
    "Aprime": ["Mentions", "SocialMedia"],
}
PAIRS = {"G_cs": ("Citations", "SocialMedia"), "G_cm": ("Citations", "Mentions"), "G_sm": ("SocialMedia", "Mentions")}
SUBGRAPHS = {
    "KG_ms": ["Mentions", "SocialMedia"],
    "KG_mc": ["Mentions", "Citations"],
    "KG_sc": ["SocialMedia", "Citations"],
    "KG_msc": ["Mentions", "SocialMedia", "Citations"],
}


def main():
    with open(os.path.join(DATA, "sample.csv"), encoding="utf-8") as f:
        sample = list(csv.DictReader(f))
    with open(os.path.join(DATA, "resolver.json"), encoding="utf-8") as f:
        resolver = json.load(f)
    with open(os.path.join(DATA, "indicators.json"), encoding="utf-8") as f:
        fixture = json.load(f)

    # resolution: resolver keyed by (first author, title); first DOI wins
    by_key = {(r["author"], r["title"]): [d.lower() for d in r["dois"]] for r in resolver}
    resolved = []
    mismatches = 0
    for row in sample:
        first = row["authors"].split(";")[0].strip()
        dois = by_key.get((first, row["title"].strip()))
        assert dois, row["id"]
        doi = dois[0]
        local = row["doi"].strip().lower()
        if local and local != doi:
            mismatches += 1
        resolved.append(doi)

    # flatten observations
    obs = []
    for doi in resolved:
        entry = fixture.get(doi)
        if entry is None:
            continue
        if entry["citation_count"] is not None:
            obs.append((doi, "Citations", "Citation Count", "Scopus", entry["citation_count"]))
        for a in entry["altmetrics"]:
            obs.append((doi, a["category"], a["metric"], a["source"], a["value"]))
    obs.sort()
    articles = sorted({o[0] for o in obs})
    idx = {d: k for k, d in enumerate(articles)}
    n = len(articles)

    metrics = sorted({(o[1], o[2], o[3]) for o in obs})
    metric_cols = {m: np.zeros(n) for m in metrics}
    cat_cols = {c: np.zeros(n) for c in CATEGORIES}
    for doi, c, m, s, v in obs:
        metric_cols[(c, m, s)][idx[doi]] += v
        cat_cols[c][idx[doi]] += v

    out = {
        "n_records": len(sample),
        "n_observations": len(obs),
        "n_articles": n,
        "doi_mismatches": mismatches,
    }

    out["source_counts"] = {s: int(sum(1 for o in obs if o[3] == s and o[4] > 0)) for s in sorted({o[3] for o in obs})}

    def summary(col):
        return {"max": float(np.max(col)), "mean": float(np.mean(col)), "median": float(np.median(col))}

    out["metric_summary"] = {f"{c}|{m}": summary(metric_cols[(c, m, s)]) for (c, m, s) in metrics}
    out["category_summary"] = {c: summary(cat_cols[c]) for c in CATEGORIES}

    def corr(x, y):
        r, p = stats.pearsonr(x, y)
        return {"r": float(r), "p": float(p), "n": int(len(x))}

    out["category_correlations"] = {
        f"{a}|{b}": corr(cat_cols[a], cat_cols[b]) for a, b in itertools.combinations(CATEGORIES, 2)
    }
    sources = sorted({s for (_, _, s) in metrics})
    src_cols = {s: metric_cols[next(k for k in metrics if k[2] == s)] for s in sources}
    out["source_correlations"] = {
        f"{a}|{b}": corr(src_cols[a], src_cols[b])
        for a, b in itertools.combinations(sources, 2)
        if np.std(src_cols[a]) > 0 and np.std(src_cols[b]) > 0
    }

    sub = {}
    for name, cats in SUBGRAPHS.items():
        keep = np.all([cat_cols[c] > 0 for c in cats], axis=0)
        entry = {"size": int(keep.sum()), "correlations": {}}
        for a, b in itertools.combinations(cats, 2):
            entry["correlations"][f"{a}|{b}"] = corr(cat_cols[a][keep], cat_cols[b][keep])
        sub[name] = entry
    out["subgraphs"] = sub

    z = {c: (cat_cols[c] - cat_cols[c].mean()) / cat_cols[c].std() for c in CATEGORIES}
    q = 0.95
    out["z_thresholds"] = {c: float(np.quantile(z[c], q)) for c in CATEGORIES}

    selections = {}
    thresholds = {}
    for name, (a, b) in PAIRS.items():
        ta, tb = np.quantile(z[a], q), np.quantile(z[b], q)
        sel = [articles[k] for k in range(n) if z[a][k] >= ta and z[b][k] >= tb]
        selections[name] = sorted(sel)
        thresholds[name] = [float(ta), float(tb)]
    for name, cats in SETS.items():
        cis = np.mean([z[c] for c in cats], axis=0)
        t = np.quantile(cis, q)
        selections[f"CIS_{name}"] = sorted(articles[k] for k in range(n) if cis[k] >= t)
        thresholds[f"CIS_{name}"] = [float(t)]
    out["selections"] = selections
    out["selection_thresholds"] = thresholds
    out["selection_matrix_rows"] = sorted(set().union(*selections.values()))

    # STROBE
    with open(os.path.join(DATA, "strobe.csv"), encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    checklists = {}
    for r in rows:
        items = [int(r[f"item_{i}"]) for i in range(1, 23)]
        checklists.setdefault(r["doi"].lower(), {})[r["reviewer"]] = items
    scores = {}
    disagreements = {}
    for doi, by_rev in checklists.items():
        scores[doi] = sum(by_rev["consensus"]) / 22.0
        disagreements[doi] = int(sum(x != y for x, y in zip(by_rev["expert1"], by_rev["expert2"])))
    threshold = float(np.quantile(sorted(scores.values()), 0.75))
    strong = sorted(d for d, s in scores.items() if s >= threshold)
    out["strobe"] = {
        "scores": dict(sorted(scores.items())),
        "disagreements": dict(sorted(disagreements.items())),
        "threshold": threshold,
        "strong": strong,
    }
    report = {}
    for doi in out["selection_matrix_rows"]:
        cells = {}
        for method, sel in selections.items():
            if doi in sel:
                if doi not in scores:
                    cells[method] = "unassessed"
                else:
                    cells[method] = "+" if scores[doi] >= threshold else "•"
        report[doi] = cells
    out["quality_report"] = report

    with open(os.path.join(DATA, "expected.json"), "w", encoding="utf-8") as f:
        json.dump(out, f, indent=1, sort_keys=True, ensure_ascii=False)
        f.write("\n")


if __name__ == "__main__":
    main()
