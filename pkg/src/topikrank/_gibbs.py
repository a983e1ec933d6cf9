"""Hot loops of the collapsed Gibbs sampler.

The kernels below are written against plain numpy arrays and scalar math so
that the exact same source compiles under numba when it is installed and runs
unmodified (slowly) under CPython when it is not. Both paths produce
bit-identical assignments: integer updates are exact, the SplitMix64 steps are
exact 64-bit integer operations, and the floating-point expressions are
evaluated in the same order in IEEE double precision either way.

The random stream is SplitMix64 (see ``topikrank.rng``) carried as a
one-element uint64 array. Consumption order is fixed and documented:

* initialization draws one double per token, tokens in (doc, position) order;
* each sweep draws one double per token, same order.

Nothing else consumes the stream, so a model is fully determined by
(corpus, config).
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV53 = 1.0 / 9007199254740992.0  # 2^-53


def _next_double(state):
    """Advance the SplitMix64 state in ``state[0]``; uniform double in [0, 1)."""
    s = state[0] + _GOLDEN
    state[0] = s
    z = (s ^ (s >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return (z >> _S11) * _INV53


def _init_assignments(doc_ids, word_ids, z, n_dk, n_kw, n_k, state):
    """Assign every token a uniform random topic and fill the count tables."""
    k_topics = n_k.shape[0]
    for i in range(doc_ids.shape[0]):
        k = int(_next_double(state) * k_topics)
        if k >= k_topics:
            k = k_topics - 1
        z[i] = k
        n_dk[doc_ids[i], k] += 1
        n_kw[k, word_ids[i]] += 1
        n_k[k] += 1


def _run_sweeps(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, sweeps, state):
    """Resample every token ``sweeps`` times in (doc, position) order.

    The collapsed conditional for token (d, w) with its own count removed is

        P(z = k | rest)  proportional to  (n_dk + alpha) (n_kw + beta) / (n_k + V beta)

    The document-length denominator is constant across k and is dropped.
    """
    k_topics = n_k.shape[0]
    v_words = n_kw.shape[1]
    vbeta = v_words * beta
    weights = np.empty(k_topics, dtype=np.float64)
    for _ in range(sweeps):
        for i in range(doc_ids.shape[0]):
            d = doc_ids[i]
            w = word_ids[i]
            old = z[i]
            n_dk[d, old] -= 1
            n_kw[old, w] -= 1
            n_k[old] -= 1

            total = 0.0
            for k in range(k_topics):
                wt = (n_dk[d, k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + vbeta)
                weights[k] = wt
                total += wt

            u = _next_double(state) * total
            new = k_topics - 1
            acc = 0.0
            for k in range(k_topics):
                acc += weights[k]
                if u < acc:
                    new = k
                    break

            z[i] = new
            n_dk[d, new] += 1
            n_kw[new, w] += 1
            n_k[new] += 1


try:  # pragma: no cover - exercised indirectly via engine selection
    import numba

    _next_double = numba.njit(cache=True, inline="always")(_next_double)
    init_assignments_jit = numba.njit(cache=True)(_init_assignments)
    run_sweeps_jit = numba.njit(cache=True)(_run_sweeps)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    init_assignments_jit = None
    run_sweeps_jit = None
    HAVE_NUMBA = False

init_assignments_py = _init_assignments
run_sweeps_py = _run_sweeps


def resolve_engine(engine: str) -> str:
    if engine == "auto":
        return "numba" if HAVE_NUMBA else "python"
    if engine == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba requested but not installed")
    if engine not in ("numba", "python"):
        raise ValueError(f"unknown gibbs engine {engine!r}")
    return engine


def init_assignments(doc_ids, word_ids, z, n_dk, n_kw, n_k, state, engine="auto"):
    if resolve_engine(engine) == "numba":
        init_assignments_jit(doc_ids, word_ids, z, n_dk, n_kw, n_k, state)
    else:
        with np.errstate(over="ignore"):  # uint64 wrap-around is intentional
            init_assignments_py(doc_ids, word_ids, z, n_dk, n_kw, n_k, state)


def run_sweeps(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, sweeps, state, engine="auto"):
    if resolve_engine(engine) == "numba":
        run_sweeps_jit(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, sweeps, state)
    else:
        with np.errstate(over="ignore"):
            run_sweeps_py(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, sweeps, state)
