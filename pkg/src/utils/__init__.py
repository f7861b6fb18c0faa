#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Utilities package.
"""
