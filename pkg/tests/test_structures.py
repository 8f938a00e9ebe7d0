import json
from fractions import Fraction

import pytest

from holoforms.exterior import FrameContext, Form, wedge
from holoforms.expressions import parse_form
from holoforms.nullcone import kappa
from holoforms.structures import (
    G2_THREE_FORM,
    StructureError,
    catalog_frame,
    check_structure,
    closure_generators,
    fundamental_forms,
    get_catalog,
    hodge_star,
    holomorphic_volume,
    kahler_form,
    load_catalog,
    normalize_name,
    quaternionic_form,
    resolve,
    spinor_representatives,
    su_constants,
    transverse_generators,
)

CATALOG = get_catalog()


def labels(name, n=None):
    return [(label, f.degree) for label, f in fundamental_forms(name, n)]


class TestLookup:
    def test_names_and_aliases(self):
        assert resolve("Spin(7)xR8") is resolve("spin7xr8")
        assert resolve("Sp2xR8").name == "Sp(2)xR8"
        assert normalize_name(" SU(4) × R8 ") == "su4xr8"

    def test_family_by_instance_name(self):
        spec = resolve("SU(3)xR6")
        assert spec.n == 3
        assert resolve("Sp(2)xR8").family is None
        assert resolve("Sp(n)xR4n", 2).n == 2

    def test_family_needs_n(self):
        with pytest.raises(StructureError):
            resolve("U(n)xR2n")
        with pytest.raises(StructureError):
            resolve("Spin7xR8", 2)
        with pytest.raises(StructureError):
            resolve("SU(3)xR6", 4)

    def test_unknown(self):
        with pytest.raises(StructureError, match="unknown structure"):
            resolve("E8xR248")

    def test_bind_range(self):
        fam = CATALOG.lookup("SO(n)xRn", 3)
        assert fam.n == 3
        with pytest.raises(StructureError):
            CATALOG.lookup("U(n)xR2n", 0)

    def test_names_are_unique(self):
        names = CATALOG.names()
        assert len(names) == len(set(names)) == 27
        assert names[0] == "Spin7xR8" and names[-1] == "G2xR7"


class TestFrames:
    def test_models(self):
        assert catalog_frame(resolve("Spin7xR8")).is_lightcone
        assert catalog_frame(resolve("SU(3)-8d")) == FrameContext.euclidean(8)
        assert catalog_frame("G2xR7").dim == 9
        assert catalog_frame("Sp(n).Sp(1)xR4n", 2).dim == 10


class TestFundamentalForms:
    def test_spin7(self):
        assert labels("Spin7xR8") == [("kappa", 1), ("Phi", 5)]

    def test_su4(self):
        assert labels("SU(4)xR8") == [("kappa", 1), ("omega", 3), ("chi1", 5), ("chi2", 5)]

    def test_sp2(self):
        assert labels("Sp(2)xR8") == [("kappa", 1)] + [(f"omega{r}", 3) for r in (1, 2, 3)]

    def test_trivial_group_has_all_two_forms(self):
        forms = labels("{1}xR8")
        assert len(forms) == 29
        assert all(d == 3 for _, d in forms[1:])

    def test_families(self):
        assert labels("G2xR7") == [("kappa", 1), ("phi", 4), ("phi4", 5)]
        assert labels("SU(n)xR2n", 3) == [("kappa", 1), ("omega", 3), ("chi1", 4), ("chi2", 4)]
        assert labels("Sp(n).Sp(1)xR4n", 2) == [("kappa", 1), ("Omega", 5)]

    def test_null_lift(self):
        for name in ("SU(4)xR8", "Sp(2)xR8"):
            frame = catalog_frame(name)
            for (_, psi), (_, phi) in zip(transverse_generators(name), closure_generators(name)):
                assert phi == wedge(kappa(frame), psi)

    def test_spin7_cayley_form(self):
        # the tabulated form is half the square of the Kähler form minus Re of the holomorphic volume
        frame = catalog_frame("Spin7xR8")
        w = kahler_form(frame, 4)
        expected = wedge(w, w) * Fraction(1, 2) - holomorphic_volume(frame, 4).real_part()
        assert dict(transverse_generators("Spin7xR8")) == {"Phi": expected}

    def test_su4_chi_is_holomorphic_volume(self):
        frame = catalog_frame("SU(4)xR8")
        g = dict(transverse_generators("SU(4)xR8"))
        chi = holomorphic_volume(frame, 4)
        assert g["chi1"] == chi.real_part()
        assert g["chi2"] == chi.imag_part() * -1

    def test_sp2_matches_quaternionic_triple(self):
        frame = catalog_frame("Sp(2)xR8")
        g = dict(transverse_generators("Sp(2)xR8"))
        for r in (1, 2, 3):
            assert g[f"omega{r}"] == quaternionic_form(frame, 2, r)

    def test_g2_forms(self):
        frame = FrameContext.euclidean(7)
        phi = parse_form(G2_THREE_FORM, frame, 3)
        psi = hodge_star(phi, range(1, 8))
        assert psi.degree == 4 and len(psi.terms) == 7
        assert wedge(phi, psi) == Form.basis(frame, tuple(range(7))) * 7
        assert hodge_star(psi, range(1, 8)) == phi


class TestRepresentatives:
    @pytest.mark.parametrize(
        "name, count",
        [("Spin7xR8", 1), ("SU(4)xR8", 2), ("Sp(2)xR8", 3), ("G2-compact-10d", 2), ("SU(2)-8d", 8)],
    )
    def test_counts(self, name, count):
        assert len(spinor_representatives(name)) == count

    def test_family_has_none(self):
        with pytest.raises(StructureError):
            spinor_representatives("U(n)xR2n", 2)


class TestConsistency:
    @pytest.mark.parametrize("name", [s.name for s in CATALOG if not s.is_family])
    def test_record(self, name):
        report = check_structure(name)
        assert report["pass"], report

    @pytest.mark.parametrize(
        "name, n",
        [(s.name, n) for s in CATALOG if s.is_family for n in range(1, 5) if s.family["min"] <= n <= s.family["max"]],
    )
    def test_family_member(self, name, n):
        report = check_structure(name, n)
        assert report["invariant"] and report["null"], report

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_su_constants(self, n):
        rows = su_constants(n)
        assert all(r["match"] for r in rows), rows
        assert len(rows) == (3 if n % 2 == 0 else 4)


class TestCatalogFiles:
    def write(self, tmp_path, data):
        path = tmp_path / "catalog.json"
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return path

    def test_invalid_json(self, tmp_path):
        with pytest.raises(StructureError, match="not valid JSON"):
            load_catalog(self.write(tmp_path, "{"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(StructureError, match="cannot read"):
            load_catalog(tmp_path / "absent.json")

    def test_missing_field(self, tmp_path):
        data = {"structures": [{"name": "X", "kind": "noncompact", "group": "G"}]}
        with pytest.raises(StructureError, match="lacks"):
            load_catalog(self.write(tmp_path, data))

    def test_wrong_l(self, tmp_path):
        rec = {"name": "X", "kind": "noncompact", "group": "G", "model": "10d", "null": True, "L": 2,
               "spinors": "1+e1234", "generators": [{"name": "a", "form": "e12"}], "expected": {}}
        with pytest.raises(StructureError, match="L=2"):
            load_catalog(self.write(tmp_path, {"structures": [rec]}))

    def test_duplicate_name(self, tmp_path):
        rec = {"name": "X", "kind": "noncompact", "group": "G", "model": "8d",
               "generators": [{"name": "a", "form": "e12"}], "expected": {}}
        with pytest.raises(StructureError, match="duplicate"):
            load_catalog(self.write(tmp_path, {"structures": [rec, dict(rec, name="x")]}))

    def test_bad_expression(self, tmp_path):
        rec = {"name": "X", "kind": "noncompact", "group": "G", "model": "8d",
               "generators": [{"name": "a", "form": "e1+"}], "expected": {}}
        with pytest.raises(StructureError):
            load_catalog(self.write(tmp_path, {"structures": [rec]}))

    def test_minimal_catalog_loads(self, tmp_path):
        rec = {"name": "X", "kind": "noncompact", "group": "G", "model": "8d",
               "generators": [{"name": "a", "form": "e12"}], "expected": {}}
        cat = load_catalog(self.write(tmp_path, {"structures": [rec]}))
        assert cat.names() == ["X"]
        assert cat.lookup("x").name == "X"
