"""Command-line front end: scenario documents in, CSV tables and plot scripts out."""
