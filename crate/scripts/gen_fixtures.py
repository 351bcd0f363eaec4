"""Regenerate the molecular fixtures under fixtures/.

Requires PySCF. For every molecule this writes:
  <name>.fcidump      restricted Hartree-Fock MO integrals (STO-3G)
  <name>.amps.json    RCCSD amplitudes in interleaved spin-orbital indexing
  <name>.ref.json     reference numbers from PySCF (HF, CCSD, FCI, HF overlap)

Amplitude sign convention written out: the double t(i<j -> a<b) multiplies
a+_a a+_b a_i a_j, so it is the negative of PySCF's t2[i, j, a, b] (which
multiplies a+_a a+_b a_j a_i).
"""

import json
import os
import sys

import numpy as np
from pyscf import cc, fci, gto, scf
from pyscf.cc import addons
from pyscf.tools import fcidump

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures")

MOLECULES = {
    # CCCBDB experimental bond length
    "h2": "H 0 0 0; H 0 0 0.7414",
    # linear chain, 0.9 A spacing
    "h4": "H 0 0 0; H 0 0 0.9; H 0 0 1.8; H 0 0 2.7",
    # CCCBDB experimental bond length
    "lih": "Li 0 0 0; H 0 0 1.5949",
}


def generate(name, atom):
    mol = gto.M(atom=atom, basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run(conv_tol=1e-12)
    fcidump.from_scf(mf, os.path.join(OUT, f"{name}.fcidump"), tol=1e-14)

    mycc = cc.RCCSD(mf)
    mycc.conv_tol = 1e-12
    mycc.conv_tol_normt = 1e-10
    mycc.kernel()

    t1 = addons.spatial2spin(mycc.t1)
    t2 = addons.spatial2spin(mycc.t2)
    nocc, nvir = t1.shape
    singles = []
    for i in range(nocc):
        for a in range(nvir):
            if i % 2 != (nocc + a) % 2:
                continue
            singles.append([i, nocc + a, float(t1[i, a])])
    doubles = []
    for i in range(nocc):
        for j in range(i + 1, nocc):
            for a in range(nvir):
                for b in range(a + 1, nvir):
                    if sorted([i % 2, j % 2]) != sorted([(nocc + a) % 2, (nocc + b) % 2]):
                        continue
                    doubles.append([i, j, nocc + a, nocc + b, float(-t2[i, j, a, b])])

    norb = mol.nao
    amps = {
        "n_spin_orbitals": 2 * norb,
        "n_electrons": mol.nelectron,
        "cc_reference_energy": float(mycc.e_tot),
        "singles": singles,
        "doubles": doubles,
    }
    with open(os.path.join(OUT, f"{name}.amps.json"), "w") as fh:
        json.dump(amps, fh, indent=1)

    e_fci, civec = fci.FCI(mf).kernel()
    ref = {
        "hf_energy": float(mf.e_tot),
        "ccsd_energy": float(mycc.e_tot),
        "fci_energy": float(e_fci),
        "hf_overlap": float(abs(civec[0, 0])),
        "n_spatial_orbitals": norb,
        "n_electrons": mol.nelectron,
    }
    with open(os.path.join(OUT, f"{name}.ref.json"), "w") as fh:
        json.dump(ref, fh, indent=1)
    print(name, ref)


if __name__ == "__main__":
    names = sys.argv[1:] or list(MOLECULES)
    for n in names:
        generate(n, MOLECULES[n])
