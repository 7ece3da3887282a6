"""Bounded bigraded 4-complexes and their cohomologies."""

from .cohomology import (CohomologyTable, PairingEngine, SpectralPage, betti,
                         conjugation_symmetric, diagram_maps, filtration, frolicher,
                         h_aeppli, h_bc, h_bc_double, h_aeppli_double, h_dbar_direct,
                         h_derham, h_dol, h_dolbar, pairing, quotient_double, sub_double)
from .complex import (COMPONENTS, SHIFTS, ComplexError, FourComplex, complex_from_dict,
                      conjugate_complex, double_complex, from_left_invariant, is_complex_json,
                      load_complex, product_complex, verify_relations, wedge_vectors)
