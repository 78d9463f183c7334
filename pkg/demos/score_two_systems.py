"""Score two machine translation systems and compare them statistically.

Walks the core scoring API end to end on a small inline test set: corpus
and segment scores for BLEU, TER and chrF, then a paired approximate
randomization test telling us whether the observed gap is trustworthy.

Run with:  python3 demos/score_two_systems.py
"""

from podium import ArtConfig, MetricId, compare_reports, score

REFERENCES = [
    "The committee approved the new budget on Friday.",
    "A spokesman said the delay was caused by heavy rain.",
    "Researchers announced the results of the study in Berlin.",
    "The museum opened its doors to visitors in 1995.",
    "More than 200 people attended the annual conference.",
    "The two countries signed a trade agreement last week.",
    "Local farmers expect a good harvest this year.",
    "The library will close early on public holidays.",
    "Officials confirmed that the bridge will be repaired soon.",
    "The report describes the effects of climate change on coastal cities.",
]

# System A: close paraphrases with small word-order and lexical slips.
SYSTEM_A = [
    "The committee approved the new budget Friday.",
    "The delay was caused by heavy rain, a spokesman said.",
    "Researchers presented the results of the study in Berlin.",
    "The museum opened the doors to visitors in 1995.",
    "More than 200 persons attended the annual conference.",
    "The two countries signed a trade agreement in the last week.",
    "Local farmers expect good harvest this year.",
    "The library closes early on public holidays.",
    "Officials confirmed the bridge will be repaired soon.",
    "The report describes the effects on coastal cities of climate change.",
]

# System B: the same output with a few extra mistakes mixed in.
SYSTEM_B = [
    "The committee approve new budget Friday.",
    "The delay was caused by rain, a spokesman said.",
    "Researchers presented results of the study in Berlin.",
    "The museum opened the doors to visitor in 1995.",
    "More than 200 persons attended the conference.",
    "The two countries signed trade agreement in the last week.",
    "Local farmers expect good harvest this year.",
    "The library closes early on holidays.",
    "Officials confirmed the bridge will be repaired.",
    "The report describes effects on coastal cities of climate change.",
]


def main() -> None:
    metrics = [MetricId.BLEU, MetricId.TER, MetricId.CHRF]

    print("corpus scores")
    print(f"{'system':<10}" + "".join(f"{m.display:>10}" for m in metrics))
    reports = {}
    for name, hypotheses in (("A", SYSTEM_A), ("B", SYSTEM_B)):
        reports[name] = {m: score(m, hypotheses, REFERENCES).named(name) for m in metrics}
        row = "".join(f"{reports[name][m].corpus_score:>10.2f}" for m in metrics)
        print(f"{name:<10}{row}")

    print()
    print("per-segment BLEU (system A)")
    for i, value in enumerate(reports["A"][MetricId.BLEU].segment_scores, start=1):
        print(f"  segment {i:>2}: {value:6.2f}")

    print()
    print("paired randomization test, A vs B (10000 trials)")
    config = ArtConfig(trials=10000, alpha=0.05, seed=42)
    for metric in metrics:
        result = compare_reports(reports["A"][metric], reports["B"][metric], config)
        verdict = "significant" if result.significant(config.alpha) else "not significant"
        print(
            f"  {metric.display:<6} {result.score_a:7.2f} vs {result.score_b:7.2f}"
            f"   p = {result.p_value:.4f}  ({verdict} at alpha = {config.alpha})"
        )


if __name__ == "__main__":
    main()
