import pytest

import heightlat as hl


@pytest.fixture(scope="session")
def lambda1():
    dom = hl.ball_domain(2, 1)
    tau = hl.zero_boundary(dom)
    return dom, tau


@pytest.fixture(scope="session")
def lambda1_configs(lambda1):
    dom, tau = lambda1
    return list(hl.enumerate_all(dom, tau))


@pytest.fixture(scope="session")
def lambda1_pairs(lambda1):
    dom, tau = lambda1
    return list(hl.enumerate_pairs(dom, tau, tau))


@pytest.fixture(scope="session")
def lambda3_d2_matrix():
    dom = hl.ball_domain(2, 3)
    tau = hl.zero_boundary(dom)
    return dom, hl.enumerate_matrix(dom, tau)
