import time

import pytest

from hypfrac.campaign import CampaignConfig, run_campaign


@pytest.fixture(scope="session")
def full_campaign():
    """The acceptance-grade campaign (seed 42, 1000 instances), run once and
    shared by the criteria that inspect it."""
    cfg = CampaignConfig(seed=42, n_instances=1000)
    start = time.perf_counter()
    report, rows = run_campaign(cfg)
    elapsed = time.perf_counter() - start
    return cfg, report, rows, elapsed
