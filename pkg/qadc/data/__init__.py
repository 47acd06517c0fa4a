# This file makes qadc/data a package so the example files ship with it.
