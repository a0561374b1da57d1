# spec -> check_isochronous (Ca_2, Ca_4, .. until nonzero) -> Verdict
# theorem class -> sample_spec -> theorem_applies + check_isochronous -> ProbeReport
