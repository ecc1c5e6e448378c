from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gerbeforms import dataset as D
from gerbeforms import gerbe as G
from gerbeforms.crossed import abelian, inner
from gerbeforms.errors import DatasetError, GerbeFormsError, ParseError

CM = inner(2)

HEAD = """[ring]
dim = 2
vars = x1, x2

[crossed_module]
instance = INNER
size = 2

[cover]
N = 3
"""

IDENT = "{mat = [[1, 0], [0, 1]], inv = [[1, 0], [0, 1]]}"


def full_gerbe(seed=0, cm=CM):
    data, cb = G.generate_exact(cm, seed)
    return D.from_parts(cm, 3, 2, gerbe=data, coboundary=cb,
                        bundle=G.generate_bundle(cm, seed, 3, 2, 1))


def trivial_cocycle_text(skip=None, override=None):
    """lambda and g sections, all identities, with one section dropped or replaced."""
    out = [HEAD]
    for fam, arity in (("lambda", 2), ("g", 3)):
        for idx in product(range(1, 4), repeat=arity):
            name = " ".join([fam, *map(str, idx)])
            if name == skip:
                continue
            value = override[1] if override and override[0] == name else IDENT
            out.append(f"[{name}]\nvalue = {value}\n")
    return "\n".join(out)


def section_of(exc_info):
    return exc_info.value.section


# -- round trips ------------------------------------------------------------------

def test_header_only_round_trip():
    ds = D.parse_dataset(HEAD)
    assert (ds.dim, ds.names, ds.instance, ds.size, ds.N) == (2, ("x1", "x2"), "INNER", 2, 3)
    assert ds.entries == {}
    assert D.parse_dataset(D.format_dataset(ds)) == ds


@pytest.mark.parametrize("seed", range(3))
def test_round_trip_all_layers(seed):
    ds = full_gerbe(seed)
    text = D.format_dataset(ds)
    back = D.parse_dataset(text)
    assert back == ds
    assert D.format_dataset(back) == text


def test_round_trip_abelian():
    ds = full_gerbe(1, abelian())
    assert ds.size == 2
    assert D.parse_dataset(D.format_dataset(ds)) == ds


def test_conversions_round_trip():
    data, cb = G.generate_exact(CM, 0)
    ds = D.from_parts(CM, 3, 2, gerbe=data, coboundary=cb)
    g = D.to_gerbe(ds)
    assert g.cocycle.lam == data.cocycle.lam and g.cocycle.g == data.cocycle.g
    assert g.connection.m == data.connection.m
    assert g.curving.B == data.curving.B
    assert g.derived.omega3 == data.derived.omega3
    c = D.to_coboundary(ds)
    assert (c.r, c.theta, c.e, c.n) == (cb.r, cb.theta, cb.e, cb.n)


def test_no_derived_omits_curvature_families():
    data, _ = G.generate_exact(CM, 0)
    ds = D.from_parts(CM, 3, 2, gerbe=data, derived=False)
    assert ds.has("lambda", "g", "m", "gamma", "B")
    assert not ds.has("nu") and not ds.has("omega3")


def test_dump_and_load(tmp_path):
    ds = full_gerbe()
    path = tmp_path / "x.gerbe"
    D.dump(ds, str(path))
    assert D.load(str(path)) == ds


def test_comments_and_default_names():
    text = "# leading comment\n[ring]\ndim = 2  # trailing\n\n[crossed_module]\n" \
           "instance = inner\nsize = 2\n[cover]\nN = 3\n"
    ds = D.parse_dataset(text)
    assert ds.names == ("x1", "x2") and ds.instance == "INNER"


def test_trivial_cocycle_parses():
    ds = D.parse_dataset(trivial_cocycle_text())
    assert G.check_all(D.to_gerbe(ds)).passed


# -- semantic errors name their section ----------------------------------------

def test_missing_inverse_is_rejected():
    text = trivial_cocycle_text(override=("lambda 1 2", "{mat = [[1, x1], [0, 1]]}"))
    with pytest.raises(DatasetError, match="inverses must be stored") as info:
        D.parse_dataset(text)
    assert section_of(info) == "lambda 1 2"


def test_wrong_inverse_is_rejected():
    text = trivial_cocycle_text(
        override=("lambda 1 2", "{mat = [[1, x1], [0, 1]], inv = [[1, x1], [0, 1]]}"))
    with pytest.raises(DatasetError) as info:
        D.parse_dataset(text)
    assert section_of(info) == "lambda 1 2"


def test_missing_section():
    with pytest.raises(DatasetError, match="missing section") as info:
        D.parse_dataset(trivial_cocycle_text(skip="g 2 3 1"))
    assert section_of(info) == "g 2 3 1"


@pytest.mark.parametrize("header", ["ring", "crossed_module", "cover"])
def test_missing_header(header):
    start = HEAD.index(f"[{header}]")
    end = HEAD.find("[", start + 1)
    text = HEAD[:start] + (HEAD[end:] if end != -1 else "")
    with pytest.raises(DatasetError) as info:
        D.parse_dataset(text)
    assert section_of(info) == header


def test_index_outside_cover():
    with pytest.raises(DatasetError, match="outside the cover") as info:
        D.parse_dataset(HEAD + f"\n[lambda 1 4]\nvalue = {IDENT}\n")
    assert section_of(info) == "lambda 1 4"


def test_wrong_arity():
    with pytest.raises(DatasetError, match="takes 3 indices"):
        D.parse_dataset(HEAD + f"\n[g 1 2]\nvalue = {IDENT}\n")


def test_unknown_family():
    with pytest.raises(DatasetError, match="unknown family"):
        D.parse_dataset(HEAD + "\n[zeta 1]\nvalue = 0\n")


def test_wrong_matrix_size():
    bad = "{mat = [[1]], inv = [[1]]}"
    with pytest.raises(DatasetError, match="2x2") as info:
        D.parse_dataset(trivial_cocycle_text(override=("lambda 2 3", bad)))
    assert section_of(info) == "lambda 2 3"


def test_wrong_form_degree():
    ds = full_gerbe()
    text = D.format_dataset(ds)
    m1 = text.index("[m 1]\nvalue = ")
    line_end = text.index("\n", m1 + 6)
    b1 = text.index("[B 1]\nvalue = ")
    b_value = text[b1 + len("[B 1]\nvalue = "):text.index("\n", b1 + 6)]
    text = text[:m1] + "[m 1]\nvalue = " + b_value + text[line_end:]
    with pytest.raises(DatasetError, match="degree 1 A-form") as info:
        D.parse_dataset(text)
    assert section_of(info) == "m 1"


def test_normalization_enforced():
    twisted = "{mat = [[1, x1], [0, 1]], inv = [[1, -x1], [0, 1]]}"
    with pytest.raises(DatasetError, match="normalization") as info:
        D.parse_dataset(trivial_cocycle_text(override=("g 1 1 2", twisted)))
    assert section_of(info) == "g 1 1 2"


def test_layer_needs_partner():
    text = HEAD + "".join(f"\n[lambda {i} {j}]\nvalue = {IDENT}\n"
                          for i in range(1, 4) for j in range(1, 4))
    with pytest.raises(DatasetError, match="without g"):
        D.parse_dataset(text)


def test_duplicate_section():
    text = trivial_cocycle_text() + f"\n[lambda 1 2]\nvalue = {IDENT}\n"
    with pytest.raises(DatasetError, match="duplicate"):
        D.parse_dataset(text)


def test_bad_instance_and_sizes():
    with pytest.raises(DatasetError) as info:
        D.parse_dataset(HEAD.replace("INNER", "OUTER"))
    assert section_of(info) == "crossed_module"
    with pytest.raises(DatasetError) as info:
        D.parse_dataset(HEAD.replace("N = 3", "N = 2"))
    assert section_of(info) == "cover"
    with pytest.raises(DatasetError, match="variable names"):
        D.parse_dataset(HEAD.replace("x1, x2", "x1"))


def test_header_after_cochains():
    text = trivial_cocycle_text() + "\n[cover]\nN = 3\n"
    with pytest.raises(DatasetError, match="precede"):
        D.parse_dataset(text)


# -- syntax errors carry positions -------------------------------------------------

def test_syntax_error_position():
    text = HEAD + "\n[lambda 1 1]\nvalue = {mat = [[1, 0], [0, 1]] inv = [[1]]}\n"
    with pytest.raises(ParseError) as info:
        D.parse_dataset(text)
    assert info.value.line == text.count("\n", 0, text.index("value = {")) + 1
    assert info.value.column > 1


def test_unknown_group_field():
    with pytest.raises(ParseError, match="unknown group field"):
        D.parse_dataset(trivial_cocycle_text(override=("lambda 1 2", "{mat = [[1, 0], [0, 1]], "
                                                                     "det = [[1]]}")))


def test_deep_nesting_is_a_parse_error():
    text = HEAD + "\n[m 1]\nvalue = deg=1 side=A {(1): [[" + "(" * 5000 + "x1" + ")" * 5000 \
        + ", 0], [0, 0]]}\n"
    with pytest.raises(ParseError):
        D.parse_dataset(text)


def test_huge_exponent_is_a_parse_error():
    with pytest.raises(ParseError):
        D.parse_dataset(trivial_cocycle_text(
            override=("lambda 1 2", "{mat = [[1, x1^100000000], [0, 1]], "
                                    "inv = [[1, -x1^100000000], [0, 1]]}")))


ALPHABET = st.sampled_from(list("[]{}(),=:#\n +-*/^0123456789xdgmlambdavalueinvmatNside=A H"))


@settings(max_examples=200)
@given(st.text(ALPHABET, max_size=120))
def test_parser_is_total_on_noise(noise):
    # any input either parses or raises one of the package's own errors
    for text in (noise, HEAD + noise, trivial_cocycle_text() + noise):
        try:
            D.parse_dataset(text)
        except (ParseError, DatasetError):
            pass


@settings(max_examples=60)
@given(st.data())
def test_parser_is_total_on_truncation(data):
    text = D.format_dataset(full_gerbe())
    cut = data.draw(st.integers(0, len(text)))
    try:
        D.parse_dataset(text[:cut])
    except GerbeFormsError as exc:
        assert isinstance(exc, (ParseError, DatasetError))
