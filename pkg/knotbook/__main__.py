"""Allow 'python -m knotbook'."""
from .cli import main

main()
