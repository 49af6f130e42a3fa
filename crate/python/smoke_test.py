"""Quick check that the extension module imports and its main operations run.

Build and install first, for example:

    pip install maturin
    pip install --no-build-isolation ./crates/python
"""

import json

import dlens


def main():
    two = dlens.Category.named("interval")
    assert two.objects() == ["⊤", "⊥"]

    lens = dlens.DeltaLens.projection(dlens.Category.named("discrete:2"), two)
    assert lens.is_split_opfibration("opcartesian")
    epi, mono = lens.epi_mono_factorization()
    assert mono.functor().is_isomorphism()

    x = lens.fibres()
    again = dlens.IndexedSmf.from_json(x.to_json())
    assert again.elements().functor().cod().objects() == two.objects()

    report = x.classify()
    assert all(v["agree"] for v in report["verdicts"]), report

    moved = x.pushforward(dlens.Functor.identity(two))
    assert moved.base().objects() == two.objects()

    for text in dlens.generate("indexed", seed=7, count=5):
        assert dlens.validate("indexed", text)["violations"] == []
    assert dlens.generate("lens", seed=3, count=2) == dlens.generate("lens", seed=3, count=2)

    bad = json.loads(two.to_json())
    bad["compose"] = bad["compose"][:1]
    assert dlens.validate("category", json.dumps(bad))["violations"]
    try:
        dlens.Category.from_json(json.dumps(bad))
    except ValueError:
        pass
    else:
        raise AssertionError("invalid category accepted")

    outcome = dlens.check_laws("split-opfib-agreement", seed=1, count=50)
    assert outcome["failures"] == [], outcome
    assert "lens-dialens" in dlens.suites()
    print("smoke test passed")


if __name__ == "__main__":
    main()
