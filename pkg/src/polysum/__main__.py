import sys

from polysum.cli import main

sys.exit(main())
