#!/usr/bin/env python
import sys

import lspline

if __name__ == "__main__":
    sys.exit(lspline.main(args=sys.argv[1:]))
