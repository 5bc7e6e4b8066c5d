import numpy as np
import pytest

from lsgo_hybrid.benchmarks import make_instance
from lsgo_hybrid.hybrid import HybridConfig, fe_budget, run
from lsgo_hybrid.tuning import (
    PARAM_BOUNDS,
    ParamVector,
    TunerConfig,
    hybrid_config_for,
    load_specialist_params,
    probe_config,
    tune,
)

# independent transcription of the published per-function triples
SPECIALIST = {
    "F1": (0.30, 0.36, 0.30),
    "F2": (0.74, 0.42, 0.30),
    "F3": (0.40, 0.78, 0.51),
    "F4": (0.34, 0.94, 0.47),
    "F5": (0.10, 0.40, 0.29),
    "F6": (0.56, 0.83, 0.69),
    "F7": (0.42, 0.79, 0.48),
    "F8": (0.34, 0.94, 0.39),
    "F9": (0.37, 0.15, 0.37),
    "F10": (0.15, 0.20, 0.56),
    "F11": (0.49, 0.80, 0.46),
    "F12": (0.45, 0.77, 0.49),
    "F13": (0.39, 0.76, 0.51),
    "F14": (0.41, 0.79, 0.48),
    "F15": (0.34, 0.14, 0.51),
}


def _tiny_tuner(**overrides):
    base = dict(ga_population=3, ga_generations=0, inner_budget=60,
                probes_per_eval=1, seed=0, population_size=20)
    base.update(overrides)
    return TunerConfig(**base)


def test_all_specialist_triples_match_the_published_table():
    for fid, (par, cr, f) in SPECIALIST.items():
        vector = load_specialist_params(fid)
        assert vector.par == pytest.approx(par, abs=1e-12), fid
        assert vector.cr == pytest.approx(cr, abs=1e-12), fid
        assert vector.f == pytest.approx(f, abs=1e-12), fid


def test_unknown_function_rejected():
    with pytest.raises(KeyError):
        load_specialist_params("F16")


def test_param_vector_bounds_enforced():
    with pytest.raises(ValueError):
        ParamVector(par=1.2, cr=0.5, f=0.5)
    with pytest.raises(ValueError):
        ParamVector(par=0.5, cr=-0.1, f=0.5)
    with pytest.raises(ValueError):
        ParamVector(par=0.5, cr=0.5, f=2.1)
    ParamVector(par=0.0, cr=1.0, f=2.0)


def test_tuner_config_validation():
    _tiny_tuner().validate()
    with pytest.raises(ValueError):
        _tiny_tuner(ga_population=1).validate()
    with pytest.raises(ValueError):
        _tiny_tuner(ga_generations=-1).validate()
    with pytest.raises(ValueError):
        _tiny_tuner(probes_per_eval=0).validate()
    with pytest.raises(ValueError):
        _tiny_tuner(inner_budget=30).validate()


def test_probe_config_budget_is_exact():
    vector = ParamVector(0.4, 0.9, 0.5)
    cfg = probe_config(vector, 30_000, 200, seed=1)
    assert fe_budget(cfg) == 30_000
    assert cfg.harmony.max_iterations == 10_000
    assert cfg.de.max_iterations == 100
    assert cfg.harmony.par == 0.4
    assert cfg.de.cr == 0.9 and cfg.de.f == 0.5

    cfg = probe_config(vector, 777, 20, seed=1)
    assert fe_budget(cfg) == 777


def test_probe_run_consumes_exactly_the_inner_budget():
    inst = make_instance("F1", 10, 0)
    cfg = probe_config(ParamVector(0.4, 0.9, 0.5), 600, 20, seed=2)
    run(inst, cfg)
    assert inst.eval_count == 600


def test_tune_output_in_bounds_and_deterministic():
    inst = make_instance("F2", 10, 1)
    config = _tiny_tuner(ga_generations=2, seed=11)
    a_vec, a_fit = tune(inst, config)
    b_vec, b_fit = tune(inst, config)
    assert a_vec == b_vec
    assert a_fit == b_fit
    for value, (lo, hi) in zip((a_vec.par, a_vec.cr, a_vec.f), PARAM_BOUNDS):
        assert lo <= value <= hi


def test_zero_generations_returns_best_of_initial_population():
    inst = make_instance("F1", 10, 3)
    config = _tiny_tuner(seed=7)
    vector, fitness = tune(inst, config)

    # re-derive the initial population and its probe outcomes independently
    rng = np.random.default_rng(np.random.SeedSequence([7]))
    lo = np.array([b[0] for b in PARAM_BOUNDS])
    hi = np.array([b[1] for b in PARAM_BOUNDS])
    genomes = rng.uniform(lo, hi, size=(config.ga_population, 3))
    outcomes = []
    for genes in genomes:
        seeds = rng.integers(0, 2**63, size=config.probes_per_eval)
        total = 0.0
        for s in seeds:
            cfg = probe_config(ParamVector(*genes), config.inner_budget,
                               config.population_size, int(s))
            total += run(inst.fresh_copy(), cfg).final_best.fitness
        outcomes.append(total / len(seeds))
    best = int(np.argmin(outcomes))
    assert vector == ParamVector(*genomes[best])
    assert fitness == outcomes[best]


def test_elitism_never_loses_the_best_probe_score():
    inst = make_instance("F1", 10, 5)
    base = tune(inst, _tiny_tuner(seed=9))[1]
    evolved = tune(inst, _tiny_tuner(seed=9, ga_generations=3))[1]
    assert evolved <= base


def test_hybrid_config_substitution():
    vector = ParamVector(0.11, 0.22, 0.33)
    cfg = hybrid_config_for(vector)
    assert cfg.harmony.par == 0.11
    assert cfg.de.cr == 0.22
    assert cfg.de.f == 0.33
    assert fe_budget(cfg) == fe_budget(HybridConfig())
    base = HybridConfig(population_size=20)
    assert hybrid_config_for(vector, base).population_size == 20
