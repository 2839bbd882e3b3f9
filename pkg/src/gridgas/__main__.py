import sys

from gridgas.cli import main

sys.exit(main())
