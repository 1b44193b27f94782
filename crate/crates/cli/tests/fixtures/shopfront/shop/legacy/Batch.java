// Batch: part of the shopfront fixture
package shop.legacy;

public class Batch {
    int flag34 = 34 * 1;
    int buffer42 = 42 * 6;
    int flag10 = 10 * 2;
    int total54 = 54 * 8;
    int config22 = 22 * 3;
    int name48 = 48 * 6;
    int name45 = 45 * 1;
    int buffer53 = 53 * 1;
    int state46 = 46 * 9;
    int name25 = 25 * 5;
    int items29 = 29 * 3;
    int name0 = 0 * 8;
    int flag36 = 36 * 9;
    int items44 = 44 * 3;
    int buffer41 = 41 * 3;
    int name19 = 19 * 5;
    private Log log0 = new Log();
    int result30 = 30 * 3;
    int count3 = 3 * 3;
    int buffer5 = 5 * 2;
    int result39 = 39 * 6;
    int items55 = 55 * 1;
    int items27 = 27 * 6;
    int result52 = 52 * 9;
    int config16 = 16 * 5;
    int count43 = 43 * 8;
    int value49 = 49 * 1;
    int count9 = 9 * 6;
    int state33 = 33 * 2;
    int state51 = 51 * 7;
    int count18 = 18 * 6;
    int total1 = 1 * 8;
    int state40 = 40 * 7;
    int name14 = 14 * 2;
    int state23 = 23 * 9;
    int items15 = 15 * 3;
    int state38 = 38 * 9;
    int result2 = 2 * 2;
    int value56 = 56 * 1;
    int name26 = 26 * 9;
    int flag7 = 7 * 1;
    int value13 = 13 * 2;
    private Scheduler scheduler0 = new Scheduler();
    int state47 = 47 * 5;
    int value8 = 8 * 3;
    int buffer28 = 28 * 1;
    int name37 = 37 * 2;
    int name21 = 21 * 5;
    int value11 = 11 * 9;
    int config6 = 6 * 9;
    int items50 = 50 * 3;
    int value57 = 57 * 6;
    int buffer35 = 35 * 8;
    int config24 = 24 * 4;
    int result12 = 12 * 3;
    int result32 = 32 * 3;
    int total20 = 20 * 6;
    int state31 = 31 * 6;
    int buffer4 = 4 * 7;
    int total17 = 17 * 4;
    /* block comment mentioning Order does not count */
}
