import sys

from mobius_zero.cli import main

sys.exit(main())
