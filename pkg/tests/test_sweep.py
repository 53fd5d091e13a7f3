import io

import pytest

from controlmode.errors import ConfigInvalid
from controlmode.sweep import HEADER, SweepConfig, instance_seed, run_experiment_sweep, splitmix64

SMALL = SweepConfig(n=200, k_min=6, k_max=8, k_step=1, instances_per_k=2, base_seed=5)


def test_header():
    assert ",".join(HEADER) == "k,seed,n,l,n_d,in_before,in_after,ic_max_before,p_m,p_r,delta_nd,delta_ic"


def test_small_sweep_rows():
    text = run_experiment_sweep(SMALL)
    lines = text.splitlines()
    assert len(lines) == 7
    ks = [row.split(",")[0] for row in lines[1:]]
    assert ks == ["6", "6", "7", "7", "8", "8"]
    for row in lines[1:]:
        cells = row.split(",")
        assert len(cells) == len(HEADER)
        assert cells[2] == "200"
        assert int(cells[3]) == round(float(cells[0]) * 100)


def test_sweep_is_byte_identical():
    buf = io.StringIO()
    assert run_experiment_sweep(SMALL, buf) == run_experiment_sweep(SMALL)
    assert buf.getvalue() == run_experiment_sweep(SMALL)


def test_filtered_sweep_keeps_only_input_largest():
    cfg = SweepConfig(n=200, k_min=4, k_max=4, k_step=1, instances_per_k=3, filter_input_largest=True)
    rows = run_experiment_sweep(cfg).splitlines()[1:]
    assert 1 <= len(rows) <= 3


def test_k_values():
    assert SweepConfig(10, 1.0, 1.3, 0.1, 1).k_values() == [1.0, 1.1, 1.2, 1.3]


def test_seeds_distinct():
    seeds = {instance_seed(0, ki, a) for ki in range(20) for a in range(50)}
    assert len(seeds) == 1000
    assert splitmix64(0) == 0xE220A8397B1DCDAF


@pytest.mark.parametrize("kw", [dict(k_min=3, k_max=2), dict(k_step=0), dict(instances_per_k=0)])
def test_invalid(kw):
    base = dict(n=10, k_min=1, k_max=2, k_step=1, instances_per_k=1)
    base.update(kw)
    with pytest.raises(ConfigInvalid):
        run_experiment_sweep(SweepConfig(**base))
