"""Named verification suites: each one checks a bounded statement family
and emits machine-readable reports.  The command line and the acceptance
tests both run these."""

from __future__ import annotations

from itertools import product as iproduct
from math import comb

from .trees import (
    LEAF,
    ThetaObject,
    count_objects,
    enumerate_objects,
    from_globular_pattern,
    globe,
    height,
    iter_objects,
    leaf_count,
    parse_theta,
    render_theta,
    size,
    theta_lift,
    to_globular_pattern,
)
from .morphisms import (
    compose_delta,
    compose_gamma,
    compose_theta,
    compose_wreath,
    delta_maps,
    factorize,
    fdelta,
    gamma_identity,
    gamma_maps,
    hom_set,
    identity_theta,
    is_epi,
    is_mono,
    is_spinal,
    render_morphism,
    wreath_decode,
    wreath_decode_morphism,
    wreath_encode,
    wreath_encode_morphism,
)
from .cellular import (
    cover_mono_sets,
    is_cover,
    is_cover_mono_set,
    product_pullback_mono_set,
    pullback_index_map,
    representable,
    segal_core,
    segal_core_of_spines,
    shuffles,
    sieve_from_mono_set,
    spine,
    terminal_cellular,
    whole_sieve,
)
from .intertwiner import LabeledSimplex, suspension, v_cellular, partition_factors
from .nerves import (
    category_nerve_oracle,
    chaotic_groupoid,
    counterexample_search,
    nerve_category,
    nerve_suspension,
    spine_iso_check,
    suspension_count_formula,
    suspension_nerve_oracle,
)
from .posets import (
    Contractibility,
    all_covers_cofinality_report,
    collapse_functor,
    delannoy,
    fiber_decomposition_check,
    is_contractible,
    order_complex,
    p_cofinality_check,
    q_category,
    q_poset,
    word_to_qobj,
)
from .fincat import is_opfibration
from .reports import FAIL, PASS, VerificationReport, timed_report


WINDOW_H2W2 = (2, 2)


def _window(hmax: int, wmax: int) -> list[ThetaObject]:
    return enumerate_objects(hmax, wmax)


# ---------------------------------------------------------------------------


def suite_gamma(**_) -> list[VerificationReport]:
    out = []
    with timed_report(
        "gamma.associativity",
        "index-map composition is associative on all triples with arities <= 3",
        {"max_arity": 3},
    ) as h:
        for p, m, n, k in iproduct(range(4), repeat=4):
            gs1 = gamma_maps(p, m)
            gs2 = gamma_maps(m, n)
            gs3 = gamma_maps(n, k)
            for f in gs3:
                for g in gs2:
                    fg = compose_gamma(f, g)
                    for e in gs1:
                        if compose_gamma(fg, e) != compose_gamma(f, compose_gamma(g, e)):
                            h["status"] = FAIL
                            h["witness"] = (str(e), str(g), str(f))
                            break
    out.append(h["report"])

    with timed_report(
        "gamma.identity",
        "singleton-fibre maps are two-sided units for index-map composition",
        {"max_arity": 3},
    ) as h:
        count = 0
        for m in range(4):
            for n in range(4):
                for g in gamma_maps(m, n):
                    if (
                        compose_gamma(gamma_identity(n), g) != g
                        or compose_gamma(g, gamma_identity(m)) != g
                    ):
                        h["status"] = FAIL
                        h["witness"] = repr(g)
                    count += 1
        h["details"]["maps"] = count
    out.append(h["report"])

    with timed_report(
        "gamma.interval-fibres.functorial",
        "the interval-fibre functor preserves composition on all simplex "
        "map pairs with arities <= 4",
        {"max_arity": 4},
    ) as h:
        pairs = 0
        for n in range(5):
            for m in range(5):
                for k in range(5):
                    for f in delta_maps(n, m):
                        ff = fdelta(f)
                        for g in delta_maps(m, k):
                            lhs = fdelta(compose_delta(g, f))
                            rhs = compose_gamma(fdelta(g), ff)
                            if lhs != rhs:
                                h["status"] = FAIL
                                h["witness"] = (str(f), str(g))
                            pairs += 1
        h["details"]["pairs"] = pairs
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_wreath_iso(hmax: int = 3, wmax: int = 3, **_) -> list[VerificationReport]:
    out = []
    with timed_report(
        "wreath-iso.objects",
        "encode/decode and the zigzag presentation are mutually inverse on "
        "every shape in the window",
        {"max_height": hmax, "max_width": wmax},
    ) as h:
        n = 0
        for t in iter_objects(hmax, wmax):
            if wreath_decode(wreath_encode(t)) != t:
                h["status"] = FAIL
                h["witness"] = render_theta(t)
                break
            if from_globular_pattern(to_globular_pattern(t)) != t:
                h["status"] = FAIL
                h["witness"] = render_theta(t)
                break
            n += 1
        h["details"]["objects"] = n
        h["details"]["expected"] = count_objects(hmax, wmax)
        if h["status"] == PASS and n != count_objects(hmax, wmax):
            h["status"] = FAIL
            h["witness"] = f"enumerated {n} shapes"
    out.append(h["report"])

    win = _window(*WINDOW_H2W2)
    with timed_report(
        "wreath-iso.hom-bijection",
        "morphism encode/decode is a bijection on every hom-set of the "
        "height/width two window",
        {"max_height": 2, "max_width": 2},
    ) as h:
        n = 0
        for a in win:
            for b in win:
                for f in hom_set(a, b):
                    if wreath_decode_morphism(wreath_encode_morphism(f)) != f:
                        h["status"] = FAIL
                        h["witness"] = render_morphism(f)
                    n += 1
        h["details"]["morphisms"] = n
    out.append(h["report"])

    with timed_report(
        "wreath-iso.composition",
        "composition computed at the wreath level agrees with shape-level "
        "composition on every composable pair of the window",
        {"max_height": 2, "max_width": 2},
    ) as h:
        pairs = 0
        enc = {}
        for a in win:
            for b in win:
                for f in hom_set(a, b):
                    enc[f] = wreath_encode_morphism(f)
        for b in win:
            for a in win:
                for f in hom_set(a, b):
                    wf = enc[f]
                    for c in win:
                        for g in hom_set(b, c):
                            got = wreath_decode_morphism(compose_wreath(enc[g], wf))
                            if got != compose_theta(g, f):
                                h["status"] = FAIL
                                h["witness"] = (render_morphism(f), render_morphism(g))
                            pairs += 1
        h["details"]["pairs"] = pairs
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_factorization(**_) -> list[VerificationReport]:
    win = _window(*WINDOW_H2W2)
    out = []
    with timed_report(
        "factorization.unique",
        "every morphism of the window factors in exactly one way as a "
        "cospinal map followed by a spinal monomorphism",
        {"max_height": 2, "max_width": 2},
    ) as h:
        n = 0
        for a in win:
            for b in win:
                for f in hom_set(a, b):
                    try:
                        c, m = factorize(f)
                    except ValueError as exc:
                        h["status"] = FAIL
                        h["witness"] = {"morphism": render_morphism(f), "error": str(exc)}
                        break
                    if compose_theta(m, c) != f:
                        h["status"] = FAIL
                        h["witness"] = render_morphism(f)
                        break
                    n += 1
        h["details"]["morphisms"] = n
    out.append(h["report"])

    with timed_report(
        "factorization.epis-spinal",
        "every epimorphism of the window is spinal and factors as itself "
        "followed by an identity",
        {"max_height": 2, "max_width": 2},
    ) as h:
        n = 0
        for a in win:
            for b in win:
                for f in hom_set(a, b):
                    if not is_epi(f):
                        continue
                    if not is_spinal(f):
                        h["status"] = FAIL
                        h["witness"] = render_morphism(f)
                        break
                    c, m = factorize(f)
                    if m != identity_theta(b) or c != f:
                        h["status"] = FAIL
                        h["witness"] = render_morphism(f)
                        break
                    n += 1
        h["details"]["epis"] = n
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_covers(big_cover_cap: int = 2000, big_sample: int = 64, **_) -> list[VerificationReport]:
    win = _window(*WINDOW_H2W2)
    out = []
    with timed_report(
        "covers.spine-and-identity",
        "the spine inclusion and the identity sieve are covers of every "
        "window shape (lifting checked against window cospinal maps)",
        {"max_height": 2, "max_width": 2},
    ) as h:
        for t in win:
            if not is_cover(spine(t), win):
                h["status"] = FAIL
                h["witness"] = {"shape": render_theta(t), "sieve": "spine"}
                break
            if not is_cover(whole_sieve(t), win):
                h["status"] = FAIL
                h["witness"] = {"shape": render_theta(t), "sieve": "identity"}
                break
    out.append(h["report"])

    with timed_report(
        "covers.epis-spinal",
        "every epimorphism between window shapes is spinal",
        {"max_height": 2, "max_width": 2},
    ) as h:
        for a in win:
            for b in win:
                for f in hom_set(a, b):
                    if is_epi(f) and not is_spinal(f):
                        h["status"] = FAIL
                        h["witness"] = render_morphism(f)
    out.append(h["report"])

    with timed_report(
        "covers.closure-vs-lifting",
        "the covers enumerated by the forcing closure are exactly the "
        "sieves passing the lifting-based cover test, on shapes where both "
        "routes are feasible",
        {"shapes": "window shapes with at most 50 covers"},
    ) as h:
        from .cellular import all_sieves_containing_spine

        checked = 0
        for t in win:
            gens, sets = cover_mono_sets(t)
            if len(sets) > 50 or len(gens) > 16:
                continue
            closure_keys = {frozenset(s) for s in sets}
            filter_keys = set()
            for sv in all_sieves_containing_spine(t):
                if is_cover(sv, win):
                    filter_keys.add(
                        frozenset(k for k, m in enumerate(gens) if sv.contains(m))
                    )
            if closure_keys != filter_keys:
                h["status"] = FAIL
                h["witness"] = {"shape": render_theta(t)}
            checked += 1
        h["details"]["shapes_checked"] = checked
    out.append(h["report"])

    with timed_report(
        "covers.pullback-spinal",
        "the pullback of a cover along a spinal map is a cover: every "
        "spinal window map against every cover of its target (sampled "
        "beyond the cap)",
        {"max_height": 2, "max_width": 2, "full_sweep_cap": big_cover_cap},
    ) as h:
        instances = 0
        sampled = []
        for b in win:
            gens_b, sets_b = cover_mono_sets(b)
            if len(sets_b) > big_cover_cap:
                sample = sets_b[:big_sample] + [frozenset(range(len(gens_b)))]
                sampled.append(render_theta(b))
            else:
                sample = sets_b
            for a in win:
                for f in hom_set(a, b):
                    if not is_spinal(f):
                        continue
                    tau = pullback_index_map(f)
                    for members in sample:
                        mask = frozenset(
                            k for k, j in enumerate(tau) if j in members
                        )
                        if not is_cover_mono_set(a, mask):
                            h["status"] = FAIL
                            h["witness"] = {
                                "target": render_theta(b),
                                "map": render_morphism(f),
                                "cover_monos": sorted(members),
                            }
                        instances += 1
        h["details"]["instances"] = instances
        h["details"]["sampled_targets"] = sampled
    out.append(h["report"])

    with timed_report(
        "covers.product-pullback",
        "pulling a product of covers back along a pair of spinal maps into "
        "the two factors yields a cover of the common source",
        {"factor_shapes": "width <= 2, height <= 1 targets", "source_size_cap": 5},
    ) as h:
        instances = 0
        factor_shapes = [theta_lift(1), theta_lift(2), globe(1)]
        for s in factor_shapes:
            gs, cs = cover_mono_sets(s)
            for t in factor_shapes:
                gt, ct = cover_mono_sets(t)
                for s_members in cs:
                    for t_members in ct:
                        for p in win:
                            if size(p) > 5:
                                continue
                            for u in hom_set(p, s):
                                if not is_spinal(u):
                                    continue
                                for v in hom_set(p, t):
                                    if not is_spinal(v):
                                        continue
                                    mask = product_pullback_mono_set(
                                        s, s_members, t, t_members, u, v
                                    )
                                    if not is_cover_mono_set(p, mask):
                                        h["status"] = FAIL
                                        h["witness"] = {
                                            "factors": (render_theta(s), render_theta(t)),
                                            "source": render_theta(p),
                                        }
                                    instances += 1
        h["details"]["instances"] = instances
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_segal(**_) -> list[VerificationReport]:
    win = _window(*WINDOW_H2W2)
    out = []
    with timed_report(
        "segal.core-edge-cases",
        "a one-segment core is the whole representable and the core of two "
        "points is the spine",
        {"max_height": 2, "max_width": 2},
    ) as h:
        for c in [LEAF, globe(1), theta_lift(2)]:
            sc = segal_core(1, [c])
            if not sc.equals_on(whole_sieve(ThetaObject((c,))), win):
                h["status"] = FAIL
                h["witness"] = render_theta(c)
        if not segal_core(2, [LEAF, LEAF]).equals_on(spine(theta_lift(2)), win):
            h["status"] = FAIL
            h["witness"] = "two-point core"
    out.append(h["report"])

    with timed_report(
        "segal.core-of-spines-is-spine",
        "the segment-wise union of suspended spines equals the spine of the "
        "assembled shape",
        {"instances": "n = 1, 2 with window components"},
    ) as h:
        cases = [
            (1, (theta_lift(2),)),
            (2, (globe(1), globe(1))),
            (2, (theta_lift(2), LEAF)),
            (2, (theta_lift(2), globe(1))),
            (2, (globe(2), theta_lift(2))),
        ]
        for n, comps in cases:
            lhs = segal_core_of_spines(n, list(comps))
            rhs = spine(ThetaObject(tuple(comps)))
            if not lhs.equals_on(rhs, win):
                h["status"] = FAIL
                h["witness"] = [render_theta(c) for c in comps]
        h["details"]["instances"] = len(cases)
    out.append(h["report"])

    with timed_report(
        "segal.spine-inside-core",
        "the spine sieve is contained in the segment core on window shapes",
        {"max_height": 2, "max_width": 2},
    ) as h:
        for t in win:
            if t.arity == 0:
                continue
            sp = spine(t)
            sc = segal_core(t.arity, list(t.children))
            if not sp.contained_in_on(sc, win):
                h["status"] = FAIL
                h["witness"] = render_theta(t)
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_qposets(max_terminus: int = 6, **_) -> list[VerificationReport]:
    out = []
    with timed_report(
        "qposets.delannoy-counts",
        "the path poset with a fixed terminus has the lattice-path count "
        "given by the three-step recurrence",
        {"max_terminus_sum": max_terminus},
    ) as h:
        for a in range(max_terminus + 1):
            for b in range(max_terminus + 1 - a):
                got = len(q_poset(a, b))
                want = delannoy(a, b)
                if got != want:
                    h["status"] = FAIL
                    h["witness"] = {"terminus": (a, b), "got": got, "want": want}
        h["details"]["q(2,2)"] = len(q_poset(2, 2))
    out.append(h["report"])

    with timed_report(
        "qposets.contractible",
        "every nonempty path poset with terminus sum at most five carries a "
        "cone or collapse certificate of contractibility",
        {"max_terminus_sum": 5},
    ) as h:
        certs = {}
        for a in range(6):
            for b in range(6 - a):
                if a + b == 0:
                    continue
                res = is_contractible(order_complex(q_poset(a, b)))
                certs[f"({a},{b})"] = res.value
                if res != Contractibility.CONTRACTIBLE:
                    h["status"] = FAIL
                    h["witness"] = {"terminus": (a, b), "result": res.value}
        h["details"]["certificates"] = certs
    out.append(h["report"])

    with timed_report(
        "qposets.category-agreement",
        "the joint-surjection category is isomorphic as a poset to the "
        "path poset with the same terminus",
        {"termini": "(1,1), (2,1), (1,2), (2,2), (3,1)"},
    ) as h:
        for a, b in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]:
            qc = q_category(a, b)
            qp = q_poset(a, b)
            w2q = {p: word_to_qobj(p) for p in qp.elements}
            ok = len(qc.objects) == len(qp) and set(w2q.values()) == set(qc.objects)
            if ok:
                for p1 in qp.elements:
                    for p2 in qp.elements:
                        if qp.is_below(p1, p2) != bool(qc.homs(w2q[p1], w2q[p2])):
                            ok = False
            if not ok:
                h["status"] = FAIL
                h["witness"] = {"terminus": (a, b)}
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def opfibration_shapes(max_height: int = 2, max_leaves: int = 3) -> list[ThetaObject]:
    return [
        t
        for t in enumerate_objects(max_height, max_leaves)
        if leaf_count(t) <= max_leaves
    ]


def suite_opfibration(max_height: int = 2, max_leaves: int = 3, **_) -> list[VerificationReport]:
    shapes = opfibration_shapes(max_height, max_leaves)
    out = []
    with timed_report(
        "opfibration.collapse",
        "root-arity collapse from the span category to the joint-surjection "
        "category is an opfibration for every shape pair in the window",
        {"max_height": max_height, "max_leaves": max_leaves, "shapes": len(shapes)},
    ) as h:
        pairs = 0
        for s in shapes:
            for t in shapes:
                functor = collapse_functor(s, t)
                if not is_opfibration(functor):
                    h["status"] = FAIL
                    h["witness"] = (render_theta(s), render_theta(t))
                pairs += 1
        h["details"]["pairs"] = pairs
    out.append(h["report"])

    with timed_report(
        "opfibration.fibers",
        "over every joint surjection the fiber of the collapse is "
        "isomorphic to the product of the column span categories",
        {"max_height": max_height, "max_leaves": max_leaves},
    ) as h:
        fibers = 0
        for s in shapes:
            for t in shapes:
                functor = collapse_functor(s, t)
                for q in functor.dst.objects:
                    if not fiber_decomposition_check(s, t, q):
                        h["status"] = FAIL
                        h["witness"] = {
                            "pair": (render_theta(s), render_theta(t)),
                            "over": q,
                        }
                    fibers += 1
        h["details"]["fibers"] = fibers
    out.append(h["report"])

    with timed_report(
        "opfibration.span-counts",
        "span categories over width-only shapes have the lattice-path "
        "count: every fiber there is a singleton",
        {"max_terminus_sum": 5},
    ) as h:
        for a in range(4):
            for b in range(4):
                if a + b == 0 or a + b > 5:
                    continue
                from .cellular import epi_mono_spans

                got = len(epi_mono_spans(theta_lift(a), theta_lift(b)))
                if got != delannoy(a, b):
                    h["status"] = FAIL
                    h["witness"] = {"pair": (a, b), "got": got}
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_cofinality(**_) -> list[VerificationReport]:
    win = _window(*WINDOW_H2W2)
    out = []
    with timed_report(
        "cofinality.initial-objects",
        "for every proper cover of every window shape, every coslice of the "
        "spinal monos inside all monos through the cover has an initial "
        "object",
        {"max_height": 2, "max_width": 2},
    ) as h:
        total_covers = 0
        total_coslices = 0
        fallbacks = 0
        for t in win:
            rep = all_covers_cofinality_report(t)
            total_covers += rep["proper_covers"]
            total_coslices += rep["coslices_checked"]
            fallbacks += rep["fallback_searches"]
            if not rep["ok"]:
                h["status"] = FAIL
                h["witness"] = rep["failures"][:3]
        h["details"]["proper_covers"] = total_covers
        h["details"]["coslices"] = total_coslices
        h["details"]["fallback_searches"] = fallbacks
    out.append(h["report"])

    with timed_report(
        "cofinality.categorical-cross-check",
        "the subobject-order route agrees with literal coslice categories "
        "on small shapes",
        {"shapes": "[2]([0],[0]), [2]([1]([0]),[0]), [1]([2]([0],[0]))"},
    ) as h:
        for name in ["[2]([0],[0])", "[2]([1]([0]),[0])", "[1]([2]([0],[0]))"]:
            t = parse_theta(name)
            gens, sets = cover_mono_sets(t)
            ident = identity_theta(t)
            for members in sets:
                sv = sieve_from_mono_set(t, gens, members)
                if sv.contains(ident):
                    continue
                if not p_cofinality_check(sv):
                    h["status"] = FAIL
                    h["witness"] = {"shape": name, "cover_monos": sorted(members)}
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_shuffles(max_total: int = 5, **_) -> list[VerificationReport]:
    out = []
    with timed_report(
        "shuffles.binomial",
        "maximal joint embeddings of two width-only shapes into their "
        "product are counted by the binomial coefficient",
        {"max_total": max_total},
    ) as h:
        counts = {}
        for n in range(max_total + 1):
            for m in range(max_total + 1 - n):
                if n + m == 0:
                    continue
                got = len(shuffles(theta_lift(n), theta_lift(m)))
                counts[f"({n},{m})"] = got
                if got != comb(n + m, n):
                    h["status"] = FAIL
                    h["witness"] = {"pair": (n, m), "got": got}
        h["details"]["counts"] = counts
    out.append(h["report"])

    with timed_report(
        "shuffles.degenerate-and-natural",
        "the point pairs with anything through the diagonal, and shuffle "
        "embeddings are natural and injective on a window",
        {"max_height": 1, "max_width": 2},
    ) as h:
        win = _window(1, 2)
        sh = shuffles(LEAF, theta_lift(2))
        if len(sh) != 1 or sh[0][0] != theta_lift(2):
            h["status"] = FAIL
            h["witness"] = [render_theta(p) for p, _ in sh]
        for p, mono in shuffles(theta_lift(1), theta_lift(1)):
            if not (mono.is_natural_on(win) and mono.is_injective_on(win)):
                h["status"] = FAIL
                h["witness"] = render_theta(p)
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_intertwiner(**_) -> list[VerificationReport]:
    win = _window(*WINDOW_H2W2)
    label_pool = _window(1, 2)
    out = []
    with timed_report(
        "intertwiner.hom-bijection",
        "with representable labels the labeled simplex evaluates to the "
        "hom-sets of the assembled shape, on every window shape, for up to "
        "three slots",
        {"max_slots": 3, "labels": "height <= 1, width <= 2"},
    ) as h:
        instances = 0
        for m in range(0, 4):
            for comps in iproduct(label_pool, repeat=m):
                if sum(size(c) for c in comps) > 6:
                    continue
                target = ThetaObject(tuple(comps))
                ls = LabeledSimplex(m, tuple(representable(c) for c in comps))
                vc = v_cellular(ls)
                for shape in win:
                    if len(vc.cells(shape)) != len(hom_set(shape, target)):
                        h["status"] = FAIL
                        h["witness"] = {
                            "target": render_theta(target),
                            "at": render_theta(shape),
                        }
                instances += 1
        h["details"]["label_tuples"] = instances
    out.append(h["report"])

    with timed_report(
        "intertwiner.suspension-of-terminal",
        "the suspension of the terminal presheaf has the cells of the "
        "one-arrow representable on every window shape",
        {"max_height": 2, "max_width": 2},
    ) as h:
        st = suspension(terminal_cellular())
        rd1 = representable(globe(1))
        for shape in win:
            if len(st.cells(shape)) != len(rd1.cells(shape)):
                h["status"] = FAIL
                h["witness"] = render_theta(shape)
    out.append(h["report"])

    with timed_report(
        "intertwiner.partition",
        "the crossing-index partition of a labeled simplex is a disjoint "
        "cover whose end groups match the two outer labeled simplices",
        {"instances": "two label families over the window"},
    ) as h:
        cases = [
            ((representable(globe(1)),), representable(theta_lift(1)),
             (representable(LEAF), representable(theta_lift(2)))),
            ((), representable(globe(1)), (representable(LEAF),)),
        ]
        for before, middle, after in cases:
            ls_all = LabeledSimplex(
                len(before) + 1 + len(after), before + (middle,) + after
            )
            va = v_cellular(LabeledSimplex(len(before), before))
            vb = v_cellular(LabeledSimplex(len(after), after))
            for shape in win:
                groups = partition_factors(before, middle, after, shape)
                total = sum(len(v) for v in groups.values())
                q = shape.arity
                ok = (
                    total == len(v_cellular(ls_all).cells(shape))
                    and len(groups[0]) == len(vb.cells(shape))
                    and len(groups[q + 1]) == len(va.cells(shape))
                )
                if not ok:
                    h["status"] = FAIL
                    h["witness"] = render_theta(shape)
    out.append(h["report"])
    return out


# ---------------------------------------------------------------------------


def suite_counterexample(window=None, **_) -> list[VerificationReport]:
    win = _window(*WINDOW_H2W2) if window is None else window
    g2 = chaotic_groupoid(2)
    j = nerve_category(g2)
    x = nerve_suspension(g2)
    out = []
    with timed_report(
        "nerves.cell-counts",
        "nerve cell counts (powers of two for the chaotic pair; two plus "
        "crossing chains for its suspension) match the element-assignment "
        "oracle on every window shape",
        {"max_height": 2, "max_width": 2},
    ) as h:
        for shape in win:
            nj = len(j.cells(shape))
            if nj != 2 ** (shape.arity + 1) or nj != category_nerve_oracle(g2, shape):
                h["status"] = FAIL
                h["witness"] = {"shape": render_theta(shape), "cells": nj}
            nx = len(x.cells(shape))
            if nx != suspension_count_formula(g2, shape) or nx != suspension_nerve_oracle(
                g2, shape
            ):
                h["status"] = FAIL
                h["witness"] = {"shape": render_theta(shape), "cells": nx}
    out.append(h["report"])

    with timed_report(
        "nerves.globular-products",
        "both nerves send every window globular sum to the matching-family "
        "limit of its summand cells",
        {"max_height": 2, "max_width": 2},
    ) as h:
        for shape in win:
            if not spine_iso_check(j, shape) or not spine_iso_check(x, shape):
                h["status"] = FAIL
                h["witness"] = render_theta(shape)
        sp = spine(theta_lift(2)).as_cellular_set()
        if spine_iso_check(sp, theta_lift(2)):
            h["status"] = FAIL
            h["witness"] = "spine subobject wrongly passed the filling check"
    out.append(h["report"])

    import time as _time

    start = _time.perf_counter()
    rep = counterexample_search(win)
    elapsed = _time.perf_counter() - start
    status = PASS if rep.status == "pass" else (
        "inconclusive" if rep.status == "inconclusive" else FAIL
    )
    out.append(
        VerificationReport(
            seconds=elapsed,
            check_id="counterexample.search",
            statement=(
                "no interval homotopy contracts the suspension of the "
                "two-object chaotic groupoid onto its basepoint segment, "
                "while the positive control with the interval as target "
                "succeeds"
            ),
            window={"shapes": rep.window},
            status=status,
            witness=(rep.witnesses or None) if status == FAIL else None,
            reason=rep.note if status == "inconclusive" else None,
            details={
                "main_solutions": rep.main_solutions,
                "retraction_compatible_solutions": rep.retraction_compatible_solutions,
                "projection_only_found": rep.projection_only_found,
                "positive_control_solutions": rep.positive_control_solutions,
                "generator_counts": rep.generator_counts,
                "note": rep.note,
            },
        )
    )
    return out


# ---------------------------------------------------------------------------


SUITES = {
    "gamma": suite_gamma,
    "wreath-iso": suite_wreath_iso,
    "factorization": suite_factorization,
    "covers": suite_covers,
    "segal": suite_segal,
    "q-posets": suite_qposets,
    "opfibration": suite_opfibration,
    "cofinality": suite_cofinality,
    "shuffles": suite_shuffles,
    "intertwiner": suite_intertwiner,
    "counterexample": suite_counterexample,
}


def run_suite(name: str, **kw) -> list[VerificationReport]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key](**kw))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**kw)
