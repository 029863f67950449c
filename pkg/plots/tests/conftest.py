import os

import pytest

STATE_CSV = """\
# kac-state v1, s=0.5, N=4, K=2, L=6.2831853071795862, time=0.5
# config: N=4 K=2 L=6.2831853071795862 s=0.5 time=0.5
n,j,re,im
0,-2,0.001,0
0,-1,0.01,0.002
0,0,0.5,0
0,1,0.01,-0.002
0,2,0.001,0
1,-2,5e-06,0
1,-1,1e-05,3e-06
1,0,0.02,0
1,1,1e-05,-3e-06
1,2,5e-06,0
2,-2,1e-07,0
2,-1,4e-06,0
2,0,0.004,0
2,1,4e-06,0
2,2,1e-07,0
3,-2,0,0
3,-1,8e-08,0
3,0,2e-07,0
3,1,8e-08,0
3,2,0,0
"""

GEVREY_CSV = """\
# kac-gevrey v1, s=0.5, snapshots=4
# config: source=runs s=0.5
t,slope,intercept,r_squared,exponent_used
0.1,17.4,-12.0,0.70,0.5
0.25,18.2,-12.5,0.78,0.5
0.5,18.9,-13.1,0.86,0.5
1,19.9,-13.8,0.92,0.5
"""

COEFFS_CSV = """\
# kac-coeffs v1, s=0.5, N=6
# config: s=0.5 N=6 tol=1e-10
kind,k,l,value
alpha,0,1,-3.0614674589207183
alpha,2,0,5.8240405650627929
lambda,0,0,0
lambda,1,0,3.0614674589207183
lambda,2,0,0
lambda,3,0,8.3402457958685246
lambda,4,0,9.6551600573619729
lambda,5,0,12.791216732380693
logLambda,1,0,1.7621312801892026
"""

HYPO_CSV = """\
# kac-hypo v1, s=0.5, N=16
# config: s=0.5 N=16
xi,R
0,0.2857142857142857
1,0.37595382104711
4,0.35221929972191
16,1.1851851851851851
"""


def _write(tmp_path, name, text):
    path = os.path.join(tmp_path, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


@pytest.fixture
def state_csv(tmp_path):
    return _write(tmp_path, "snapshot_000500.csv", STATE_CSV)


@pytest.fixture
def gevrey_csv(tmp_path):
    return _write(tmp_path, "gevrey_fits.csv", GEVREY_CSV)


@pytest.fixture
def coeffs_csv(tmp_path):
    return _write(tmp_path, "coeffs.csv", COEFFS_CSV)


@pytest.fixture
def hypo_csv(tmp_path):
    return _write(tmp_path, "hypo.csv", HYPO_CSV)


@pytest.fixture
def write_csv(tmp_path):
    def inner(name, text):
        return _write(tmp_path, name, text)
    return inner
