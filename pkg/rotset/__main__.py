#!/usr/bin/env python3

import rotset

if __name__ == "__main__":
    rotset.main()
