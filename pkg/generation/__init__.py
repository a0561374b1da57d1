# alphabet -> operators (HomOp per letter) -> bracket_coeffs / compose_apply
# mould (Carr by weight key) -> correction (Ca_2p by depth) -> variety (generators, export)
# constraints: reality + Hamiltonian relations onto the independent coordinates
