from cdo_workbench.cli import main


main()
