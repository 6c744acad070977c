# -*- coding: utf-8 -*-
#
# This file is part of Stochastic-Sea.
# Copyright (C) 2026 Stochastic-Sea contributors.
#
# Stochastic-Sea is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Dimension bounds for horseshoes and experiments on the standard map."""

from setuptools import setup

setup()
