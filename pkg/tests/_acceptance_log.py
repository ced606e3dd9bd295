"""Per-criterion verdict lines, printed by the terminal-summary hook in conftest."""
LINES = []
