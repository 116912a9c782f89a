import sys

from catrand.cli import main

sys.exit(main())
