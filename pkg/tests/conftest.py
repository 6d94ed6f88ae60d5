# makes tests/ importable (oracles.py) under pytest's rootdir mechanics
