import json
import os

import _igtype

CORPUS = os.environ["IGTYPE_CORPUS_DIR"]


def load(name):
    with open(os.path.join(CORPUS, name)) as f:
        return f.read()


def test_torsion_free_verdict():
    report, code = _igtype.run("torsion", load("and.igm"))
    assert code == 0
    r = json.loads(report)
    assert r["schema"] == 1
    assert r["results"]["torsion_free"] is True
    assert r["results"]["algorithms_agree"] is True


def test_torsion_witness():
    report, code = _igtype.run("torsion", load("torsionex.igm"))
    assert code == 0
    r = json.loads(report)
    assert r["results"]["torsion_free"] is False
    assert r["results"]["witness"]["order"] == 2


def test_ybe():
    report, code = _igtype.run("ybe", load("belvb.irel"))
    assert code == 0
    r = json.loads(report)
    assert r["results"]["ybe"] is True
    assert r["results"]["group_order"] == 8
    assert r["results"]["sigma"] == ["(2 3)", "(1 4)", "(1 2 4 3)", "(1 3 4 2)"]


def test_expectation_refuted():
    _, code = _igtype.run("torsion", load("torsionex.igm"), expect="torsion-free")
    assert code == 1


def test_corpus_matches_goldens():
    report, code = _igtype.run_corpus(CORPUS)
    assert code == 0
    assert json.loads(report)["passed"] is True


def test_render_is_idempotent():
    rendered = _igtype.render(load("and.igm"))
    assert _igtype.render(rendered) == rendered


def test_digest_is_stable():
    assert _igtype.digest("") == "fnv1a64:cbf29ce484222325"
    assert _igtype.digest("a") != _igtype.digest("b")
