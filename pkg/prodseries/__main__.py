"""Allow ``python -m prodseries``."""

from .cli import main

raise SystemExit(main())
