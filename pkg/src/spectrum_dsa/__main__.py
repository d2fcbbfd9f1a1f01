import sys

from spectrum_dsa.cli import main

sys.exit(main())
