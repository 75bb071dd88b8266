import sys

from chirality.cli import main


sys.exit(main())
