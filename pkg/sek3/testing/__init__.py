# Test-support code: reference oracles and hypothesis strategies.
# The library never imports it; only `verify` loads the series oracle, on demand.
