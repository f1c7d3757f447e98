from __future__ import annotations

import json

import pytest

from negami.cli import main
from negami.corpus import antipodal_cover, c_n, k4, slit_double_cover_k4, slit_sphere_scheme
from negami.graph_core import make_scheme, planar_embed
from negami.interchange import InterchangeError, dump, emit, parse, to_dot
from negami.negami_props import check_pev, quotient_embedding


def triangle_negative():
    return make_scheme(c_n(3), {0: [0, 5], 1: [1, 2], 2: [3, 4]}, [1, 1, -1])


@pytest.fixture
def files(tmp_path):
    anti = antipodal_cover()
    s = planar_embed(anti.source)
    paths = {
        "k4": tmp_path / "k4.json",
        "k4s": tmp_path / "k4s.json",
        "anti": tmp_path / "anti.json",
        "anti_s": tmp_path / "anti_s.json",
        "id": tmp_path / "id.json",
        "tri": tmp_path / "tri.json",
        "slit": tmp_path / "slit.json",
    }
    dump(k4(), paths["k4"])
    dump(planar_embed(k4()), paths["k4s"])
    dump(anti, paths["anti"])
    dump(s, paths["anti_s"])
    from negami.covering import identity_cover
    dump(identity_cover(k4()), paths["id"])
    dump(triangle_negative(), paths["tri"])
    dump(slit_double_cover_k4(), paths["slit"])
    return {k: str(v) for k, v in paths.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestRoundTrip:
    def test_graph_scheme_cover(self):
        anti = antipodal_cover()
        for obj in (k4(), planar_embed(anti.source), anti, triangle_negative()):
            kind, back = parse(emit(obj))
            assert back == obj

    def test_signs_and_quotient(self):
        c = slit_double_cover_k4()
        s = slit_sphere_scheme(c)
        r = check_pev(c, s)
        q = quotient_embedding(c, s, r.signs)
        assert parse(emit(r.signs))[1] == r.signs
        assert parse(emit(q))[1] == q

    def test_bundle(self):
        c = antipodal_cover()
        s = planar_embed(c.source)
        doc = {"name": "x", "cover": c, "scheme": s}
        assert parse(emit(doc, "bundle"))[1] == doc

    def test_results_table(self):
        table = {"graph": k4(), "rows": [{"index": 0, "planar": True}]}
        assert parse(emit(table, "results_table"))[1] == table

    def test_unknown_field_rejected(self):
        doc = json.loads(emit(k4()))
        doc["payload"]["extra"] = 1
        with pytest.raises(InterchangeError, match="unknown field"):
            parse(json.dumps(doc))

    def test_wrong_version(self):
        doc = json.loads(emit(k4()))
        doc["format_version"] = 7
        with pytest.raises(InterchangeError):
            parse(json.dumps(doc))

    def test_deterministic(self):
        assert emit(antipodal_cover()) == emit(antipodal_cover())

    def test_dot_marks_negative_edges(self):
        dot = to_dot(triangle_negative())
        assert dot.count("style=dashed") == 1
        assert "<p0>" in dot


class TestCli:
    def test_validate(self, capsys, files):
        code, out, _ = run(capsys, "validate", files["k4"])
        assert code == 0 and "assumptions hold" in out

    def test_validate_bouquet_fails(self, capsys, tmp_path):
        from negami.corpus import bouquet
        p = tmp_path / "b.json"
        dump(bouquet(2), p)
        code, out, _ = run(capsys, "validate", str(p))
        assert code == 1 and "loop" in out

    def test_malformed(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, _, err = run(capsys, "validate", str(p))
        assert code == 2
        assert json.loads(err)["error"] == "malformed"

    def test_identity_check(self, capsys, files):
        code, out, _ = run(capsys, "negami", "check", "--cover", files["id"], "--scheme", files["k4s"])
        assert code == 0 and out.strip() == "PEV holds, surface S2"

    def test_antipodal_quotient(self, capsys, files):
        code, out, _ = run(capsys, "negami", "quotient", "--cover", files["anti"],
                           "--scheme", files["anti_s"])
        assert code == 0
        kind, q = parse(out)
        assert kind == "quotient_report"
        assert q.surface.euler_characteristic == 1 and q.sign_verdict == "P2"

    def test_strict_pv_fails(self, capsys, files):
        code, out, _ = run(capsys, "negami", "check", "--cover", files["anti"],
                           "--scheme", files["anti_s"], "--strict-pv")
        assert code == 1 and "strict" in out

    def test_all_embeddings(self, capsys, files):
        code, out, _ = run(capsys, "negami", "check", "--cover", files["slit"], "--all-embeddings")
        assert code == 0 and out.startswith("PEV holds, surface S2")

    def test_surface(self, capsys, files):
        code, out, _ = run(capsys, "embed", "surface", files["tri"])
        assert out.strip() == "crosscap 1 (projective plane)"

    def test_faces(self, capsys, files):
        code, out, _ = run(capsys, "embed", "faces", files["k4s"])
        assert code == 0 and len(out.splitlines()) == 4

    def test_planar_nonplanar(self, capsys, tmp_path):
        from negami.graph_core import build_graph
        p = tmp_path / "k33.json"
        dump(build_graph(range(6), [(i, j) for i in range(3) for j in range(3, 6)]), p)
        code, out, _ = run(capsys, "embed", "planar", str(p))
        assert code == 1 and out.strip() == "NonPlanar"

    def test_cover_commands(self, capsys, files):
        code, out, _ = run(capsys, "cover", "classify", files["slit"])
        assert code == 0 and "kind: branched" in out
        code, out, _ = run(capsys, "cover", "deck", files["anti"])
        assert out.strip() == "deck group order: 2"
        code, out, _ = run(capsys, "cover", "regular", files["anti"])
        assert code == 0 and out.strip() == "regular"

    def test_budget_exit(self, capsys, files, monkeypatch):
        monkeypatch.setenv("NEGAMI_BUDGET", "10")
        code, _, err = run(capsys, "negami", "check", "--cover", files["anti"], "--all-embeddings")
        assert code == 3 and json.loads(err)["error"] == "budget"

    def test_lift_commands(self, capsys, files, tmp_path):
        code, out, _ = run(capsys, "lift", "odc", "--scheme", files["tri"])
        assert code == 0
        kind, bundle = parse(out)
        assert len(bundle["cover"].source.vertices) == 6 and bundle["note"] == "connected"
        code, out, _ = run(capsys, "lift", "factor", "--cover", files["anti"], "--scheme", files["anti_s"])
        assert code == 0 and parse(out)[1].degree == 1
        from negami.covering import identity_cover
        inner = tmp_path / "inner.json"
        dump(identity_cover(antipodal_cover().source), inner)
        code, out, _ = run(capsys, "lift", "pipeline", "--f", files["anti"], "--ftilde", str(inner),
                           "--scheme", files["anti_s"])
        assert code == 0 and parse(out)[1]["case"] == 1

    def test_lift_missing_flag(self, capsys):
        code, _, err = run(capsys, "lift", "factor", "--scheme", "x.json")
        assert code == 2

    def test_gen_and_export(self, capsys, files):
        code, out, _ = run(capsys, "gen", "k1222")
        assert code == 0 and len(parse(out)[1].edges) == 18
        code, out, _ = run(capsys, "gen", "double-covers", files["k4"])
        assert len(out.splitlines()) == 7
        code, out, _ = run(capsys, "export", "dot", files["k4s"])
        assert out.startswith("graph G {")

    def test_gen_examples_reverify(self, capsys, tmp_path):
        code, out, _ = run(capsys, "gen", "examples")
        assert code == 0
        checked = 0
        for i, line in enumerate(out.splitlines()):
            kind, bundle = parse(line)
            if "signs" not in bundle:
                continue
            p = tmp_path / f"e{i}.json"
            p.write_text(line)
            _, vout, _ = run(capsys, "validate", str(p))
            assert "certificate: re-verified" in vout, bundle["name"]
            checked += 1
        assert checked >= 4

    def test_search(self, capsys, files, tmp_path):
        out_path = tmp_path / "rows.jsonl"
        code, out, _ = run(capsys, "search", "conjecture", "--graph", files["k4"],
                           "--max-degree", "2", "--out", str(out_path))
        assert code == 0 and json.loads(out)["complete"]
        assert len(out_path.read_text().splitlines()) == 7

    def test_byte_identical(self, capsys, files):
        a = run(capsys, "negami", "quotient", "--cover", files["anti"], "--scheme", files["anti_s"])
        b = run(capsys, "negami", "quotient", "--cover", files["anti"], "--scheme", files["anti_s"])
        assert a == b
